#pragma once

#include <random>

#include "crossing/crossing.hpp"

namespace testutil {

// Reference parameter set used across the suites.
inline crossing::ModelParams p0() {
  crossing::ModelParams p;
  p.delta = 0.1;
  p.theta = 0.02;
  p.epsilon = 0.05;
  p.a_max = 3.0;
  p.v_max = 15.0;
  p.h = 1.0;
  p.h_bar = 2.0;
  p.zone_radius = 300.0;
  p.conflict_radius = 30.0;
  return p;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Random draw on the 2^-10 grid; keeps arithmetic exact in double.
inline double dyadic(std::mt19937_64& rng, double lo, double hi) {
  const double step = 0x1.0p-10;
  const long n = static_cast<long>((hi - lo) / step);
  return lo + step * static_cast<double>(rng() % static_cast<unsigned long>(n + 1));
}

// Reference snapshot: 20 m gap, everything at 10 m/s.
inline crossing::PairSnapshot gap20() {
  return {30.0, 50.0, 10.0, 10.0, 10.0, 10.0, 10.0};
}

inline crossing::PairSnapshot with_gap(double gap) {
  crossing::PairSnapshot s = gap20();
  s.x_hat_l = s.x_hat_f + gap;
  return s;
}

}  // namespace testutil
