#pragma once

#include <cstdint>
#include <random>

#include "crossing/interval.hpp"
#include "crossing/params.hpp"

namespace crossing {

/// One vehicle's ground truth. Positions are signed route progress:
/// negative approaching the conflict point, positive past it.
struct VehicleRecord {
  int route = 1;         // 1 or 2
  int index = 0;         // arrival order on its route
  double x = 0.0;        // position [m], in [-L, L]
  double v = 0.0;        // speed [m/s], in [0, v_max]
  double u_prev = 0.0;   // last commanded target speed [m/s]
};

enum class NoiseKind {
  kZero,         // realize every speed at the interval center
  kUniform,      // seeded uniform draw inside the reachable interval
  kAdversarial,  // followers at interval max, leaders at interval min
};

enum class VehicleRole { kLeader, kFollower };

// Target actually pursued over one step: u clamped to the speed change the
// vehicle can make from v_prev.
inline double clamp_target(double v_prev, double u, const ModelParams& p) {
  const double reach = p.accel_step();
  if (u < v_prev - reach) return v_prev - reach;
  if (u > v_prev + reach) return v_prev + reach;
  return u;
}

// Set of speeds the vehicle may land on after one step: an epsilon
// neighborhood of the pursued target, floored at 0 and capped at v_max.
inline Interval speed_reachable_set(double v_prev, double u,
                                    const ModelParams& p) {
  const double c = clamp_target(v_prev, u, p);
  return intersect({c - p.epsilon, c + p.epsilon}, {0.0, p.v_max});
}

// Trapezoidal position update over one step.
inline double advance_position(double x, double v_now, double v_next,
                               const ModelParams& p) {
  return x + 0.5 * p.delta * (v_now + v_next);
}

// Uniform draw in [iv.lo, iv.hi] built directly from the generator's bits so
// realizations are identical across standard libraries.
inline double uniform_in(const Interval& iv, std::mt19937_64& rng) {
  const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return iv.lo + (iv.hi - iv.lo) * t;
}

inline double realize_speed(NoiseKind kind, const Interval& reachable,
                            VehicleRole role, std::mt19937_64& rng) {
  switch (kind) {
    case NoiseKind::kZero:
      return reachable.center();
    case NoiseKind::kUniform:
      return uniform_in(reachable, rng);
    case NoiseKind::kAdversarial:
      return role == VehicleRole::kFollower ? reachable.hi : reachable.lo;
  }
  return reachable.center();
}

}  // namespace crossing
