#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "crossing/estimator.hpp"
#include "crossing/interval.hpp"
#include "crossing/params.hpp"

namespace crossing {

/// Everything the coordination law needs about one follower/leader pair.
/// Suffix _f is the follower (vehicle i), _l its leader (vehicle i-1).
struct PairSnapshot {
  double x_hat_f = 0.0;
  double x_hat_l = 0.0;
  double v_hat_f = 0.0;
  double v_hat_l = 0.0;
  double u_prev_f = 0.0;
  double u_prev_l = 0.0;
  double u_now_l = 0.0;  // leader's command for the current step
};

struct ConditionCheck {
  double value = 0.0;
  bool holds = false;
};

enum class DecisionCase {
  kExplicit,       // both safety conditions hold: command the gap-closing root
  kClampedArgmin,  // safe but cannot close the gap this step: feasible max
  kInfeasible,     // no feasible command keeps the safe distance
};

struct ControlDecision {
  DecisionCase kase = DecisionCase::kInfeasible;
  std::optional<double> u;  // absent when infeasible
  double lambda_at_u = 0.0;
  ConditionCheck cond1;
  ConditionCheck cond2;
};

// Commands reachable this step regardless of where the previous command's
// realization landed: the epsilon margins absorb the tracking uncertainty.
inline Interval feasible_input_interval(double u_prev, const ModelParams& p) {
  const double slack = p.accel_step() - p.epsilon;
  return intersect({u_prev - slack, u_prev + slack}, {0.0, p.v_max});
}

// lambda(u) = intercept - slope * u. Slope is constant across snapshots.
inline double lambda_slope(const ModelParams& p) { return 0.5 * p.delta + p.h; }

inline double lambda_intercept(const PairSnapshot& s, const ModelParams& p) {
  const double du_prev = s.u_prev_l - s.u_prev_f;
  return p.theta * (s.v_hat_l - s.v_hat_f + du_prev) -
         2.0 * p.delta * p.epsilon - 2.0 * p.theta * p.epsilon + s.x_hat_l -
         s.x_hat_f + 0.5 * p.delta * (du_prev + s.u_now_l);
}

/// Worst-case surplus gap beyond the minimum allowable distance at the next
/// actuation instant, if the follower is commanded u_cand. Safety wants >= 0.
inline double lambda(const PairSnapshot& s, double u_cand,
                     const ModelParams& p) {
  return lambda_intercept(s, p) - lambda_slope(p) * u_cand;
}

/// Same quantity computed from the estimator's interval endpoints rather than
/// the expanded affine form; kept as an independent cross-check.
inline double lambda_oracle(const PairSnapshot& s, double u_cand,
                            const ModelParams& p) {
  const DelayedObservation follower{s.x_hat_f, s.v_hat_f, s.u_prev_f, 0};
  const DelayedObservation leader{s.x_hat_l, s.v_hat_l, s.u_prev_l, 0};
  const StateBox next_f =
      predict_next(estimate_at_actuation(follower, p), u_cand, p);
  const StateBox next_l =
      predict_next(estimate_at_actuation(leader, p), s.u_now_l, p);
  return next_l.pos.lo - next_f.pos.hi - p.h * u_cand;
}

inline double pair_affine_part(const PairSnapshot& s, const ModelParams& p) {
  return s.x_hat_f - s.x_hat_l + p.theta * (s.v_hat_f - s.v_hat_l) +
         (p.theta + p.delta + p.h) * s.u_prev_f -
         (p.theta + 0.5 * p.delta) * s.u_prev_l - 0.5 * p.delta * s.u_now_l;
}

/// One-step existence test: some feasible command keeps the safe distance
/// (the pair survives even under maximal braking). Holds iff value <= 0.
inline ConditionCheck condition1(const PairSnapshot& s, const ModelParams& p) {
  const double ad = p.accel_step();
  const double value = pair_affine_part(s, p) + 2.0 * p.epsilon * p.theta +
                       1.5 * p.delta * p.epsilon - 0.5 * ad * p.delta -
                       p.h * ad + p.h * p.epsilon;
  return {value, value <= 0.0};
}

/// One-step tightness test: some feasible command closes the gap down to the
/// minimum allowable distance. Holds iff value >= 0.
inline ConditionCheck condition2(const PairSnapshot& s, const ModelParams& p) {
  const double ad = p.accel_step();
  const double value = pair_affine_part(s, p) + 2.0 * p.epsilon * p.theta +
                       0.5 * p.delta * p.epsilon + 0.5 * ad * p.delta +
                       p.h * ad - p.h * p.epsilon;
  return {value, value >= 0.0};
}

// Unclamped root of lambda: the command that exactly zeroes the surplus gap.
inline double explicit_law(const PairSnapshot& s, const ModelParams& p) {
  return lambda_intercept(s, p) / lambda_slope(p);
}

/// The coordination law for one follower. lambda is strictly decreasing in u,
/// so the constrained argmin{lambda | lambda >= 0} over the feasible interval
/// is the root clamped into it; with both conditions holding the clamp is a
/// no-op and lambda lands on zero.
inline ControlDecision decide(const PairSnapshot& s, const ModelParams& p) {
  ControlDecision d;
  d.cond1 = condition1(s, p);
  d.cond2 = condition2(s, p);
  const Interval feasible = feasible_input_interval(s.u_prev_f, p);
  if (!d.cond1.holds) {
    d.kase = DecisionCase::kInfeasible;
    d.u = std::nullopt;
    d.lambda_at_u = lambda(s, feasible.lo, p);  // best attainable surplus
    return d;
  }
  const double u = feasible.clamp(explicit_law(s, p));
  d.kase = d.cond2.holds ? DecisionCase::kExplicit : DecisionCase::kClampedArgmin;
  d.u = u;
  d.lambda_at_u = lambda(s, u, p);
  return d;
}

// Command the vehicle actually tracks: the decision's, or maximal braking
// when no safe command exists.
inline double effective_command(const ControlDecision& d, double u_prev,
                                const ModelParams& p) {
  return d.u ? *d.u : feasible_input_interval(u_prev, p).lo;
}

struct CoordinateOptions {
  // Cap follower commands at the condition-3 bound (when it is feasible), so
  // one-step safety extends inductively over the whole horizon.
  bool condition3_cap = false;
};

inline PairSnapshot make_pair_snapshot(const DelayedObservation& follower,
                                       const DelayedObservation& leader,
                                       double u_now_leader) {
  return {follower.x_hat, leader.x_hat, follower.v_hat, leader.v_hat,
          follower.u_prev, leader.u_prev, u_now_leader};
}

/// Runs the law front-to-back along one route. The first observation is the
/// front-most vehicle, which has no leader and is simply pushed to the
/// fastest feasible speed; each follower then sees its leader's fresh command.
inline std::vector<ControlDecision> coordinate_route(
    const std::vector<DelayedObservation>& vehicles, const ModelParams& p,
    const CoordinateOptions& opts = {}) {
  std::vector<ControlDecision> out;
  out.reserve(vehicles.size());
  double u_now_lead = 0.0;
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    const double u_prev = vehicles[i].u_prev;
    const Interval feasible = feasible_input_interval(u_prev, p);
    ControlDecision d;
    if (i == 0) {
      constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
      d.kase = DecisionCase::kClampedArgmin;
      d.u = std::min(p.v_max, feasible.hi);
      d.lambda_at_u = std::numeric_limits<double>::infinity();
      d.cond1 = {kNan, true};
      d.cond2 = {kNan, false};
    } else {
      d = decide(make_pair_snapshot(vehicles[i], vehicles[i - 1], u_now_lead),
                 p);
      if (opts.condition3_cap && d.u) {
        // Shaved by a hair so the capped command still evaluates as
        // satisfying the certificate after rounding.
        const double cap =
            ((0.5 * p.delta + p.h) * u_prev + p.delta * u_now_lead -
             0.5 * p.delta * (p.accel_step() + p.epsilon)) /
                (1.5 * p.delta + p.h) -
            1e-9;
        if (cap >= feasible.lo) {
          const double u = std::min(*d.u, cap);
          d.u = u;
          d.lambda_at_u = lambda(
              make_pair_snapshot(vehicles[i], vehicles[i - 1], u_now_lead), u,
              p);
        }
      }
    }
    u_now_lead = effective_command(d, u_prev, p);
    out.push_back(d);
  }
  return out;
}

}  // namespace crossing
