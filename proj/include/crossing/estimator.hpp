#pragma once

#include "crossing/interval.hpp"
#include "crossing/params.hpp"

namespace crossing {

/// What the controller knows about one vehicle: its state as reported one
/// latency ago, plus the command it is currently tracking.
struct DelayedObservation {
  double x_hat = 0.0;   // reported position [m] (true position at t - theta)
  double v_hat = 0.0;   // reported speed [m/s]
  double u_prev = 0.0;  // command issued on the previous step [m/s]
  int tick = 0;
};

/// Set-valued state: every (position, speed) the vehicle may occupy.
struct StateBox {
  Interval pos;  // [m]
  Interval spd;  // [m/s], subset of [0, v_max]
};

/// Bounds the vehicle's state at actuation time (one latency after "now",
/// i.e. two latencies after the reported state was sampled). The position
/// advances by the trapezoid of the reported speed and the tracked command;
/// the speed is pinned to within epsilon of that command.
inline StateBox estimate_at_actuation(const DelayedObservation& obs,
                                      const ModelParams& p) {
  const double drift_lo = obs.v_hat + obs.u_prev - p.epsilon;
  const double drift_hi = obs.v_hat + obs.u_prev + p.epsilon;
  StateBox box;
  box.pos = {obs.x_hat + p.theta * drift_lo, obs.x_hat + p.theta * drift_hi};
  box.spd = intersect({obs.u_prev - p.epsilon, obs.u_prev + p.epsilon},
                      {0.0, p.v_max});
  return box;
}

/// Propagates a state box one step forward under command u_now, assuming
/// u_now is reachable (it is, whenever it came from the feasible input set).
inline StateBox predict_next(const StateBox& box, double u_now,
                             const ModelParams& p) {
  StateBox next;
  next.spd = intersect({u_now - p.epsilon, u_now + p.epsilon}, {0.0, p.v_max});
  next.pos = box.pos + (box.spd + next.spd).scaled(0.5 * p.delta);
  return next;
}

// Width of the one-step position prediction when no speed clipping occurs:
// 2*epsilon*(theta + delta). Clipping at 0 or v_max only shrinks it.
inline double prediction_width(const ModelParams& p) {
  return 2.0 * p.epsilon * (p.theta + p.delta);
}

}  // namespace crossing
