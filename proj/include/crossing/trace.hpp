#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossing/controller.hpp"
#include "crossing/scenario.hpp"

namespace crossing {

enum class TraceDecision { kLead, kExplicit, kClampedArgmin, kInfeasible };

inline const char* to_string(TraceDecision d) {
  switch (d) {
    case TraceDecision::kLead: return "lead";
    case TraceDecision::kExplicit: return "explicit";
    case TraceDecision::kClampedArgmin: return "argmin";
    case TraceDecision::kInfeasible: return "infeasible";
  }
  return "?";
}

/// One vehicle at one tick. Truth is sampled at the tick instant; the
/// observation columns are what the controller actually saw (theta old).
struct TraceRow {
  int tick = 0;
  double time_s = 0.0;
  int route = 1;
  int vehicle_id = 0;
  double x_true = 0.0;
  double v_true = 0.0;
  double x_obs = 0.0;
  double v_obs = 0.0;
  double u_cmd = 0.0;
  TraceDecision decision = TraceDecision::kLead;
  double lambda = 0.0;
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool violation = false;
};

struct SpawnDeferral {
  int tick = 0;
  int route = 1;
  std::string reason;
};

struct Retirement {
  int tick = 0;
  int route = 1;
  int vehicle_id = 0;
};

struct SimTrace {
  Scenario scenario;  // echo of the input, seed included
  std::vector<TraceRow> rows;
  std::vector<SpawnDeferral> deferrals;
  std::vector<Retirement> retirements;
};

}  // namespace crossing
