#pragma once

#include "crossing/capacity.hpp"
#include "crossing/controller.hpp"
#include "crossing/dynamics.hpp"
#include "crossing/estimator.hpp"
#include "crossing/interval.hpp"
#include "crossing/params.hpp"
#include "crossing/safety.hpp"
#include "crossing/scenario.hpp"
#include "crossing/sim.hpp"
#include "crossing/trace.hpp"
#include "crossing/trace_io.hpp"
