#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "crossing/controller.hpp"
#include "crossing/dynamics.hpp"
#include "crossing/estimator.hpp"
#include "crossing/safety.hpp"
#include "crossing/scenario.hpp"
#include "crossing/trace.hpp"

namespace crossing {

/// Test hook: per-tick ground truth at the actuation instant, alongside what
/// the controller saw and commanded. Lets tests check estimator containment
/// and command feasibility against the real (not tick-sampled) state.
struct StepProbe {
  struct Item {
    VehicleRecord truth;  // state at the instant the command lands
    DelayedObservation obs;
    double u_cmd = 0.0;
  };
  int tick = 0;
  std::vector<Item> items;
};

using StepProbeFn = std::function<void(const StepProbe&)>;

namespace detail {

// Truth lives on the actuation grid: node t is the instant t*delta + theta,
// when command u(t) reaches the vehicle and the previous command's tracking
// has just completed. Two history nodes cover observation interpolation for
// any theta < delta.
struct SimVehicle {
  int route = 1;
  int id = 0;
  double x_node = 0.0, s_node = 0.0;    // node t
  double x_prev = 0.0, s_prev = 0.0;    // node t-1
  double x_prev2 = 0.0, s_prev2 = 0.0;  // node t-2
  double u_prev = 0.0;                  // command realized at node t
};

inline SimVehicle seed_vehicle(int route, int id, double x, double v,
                               double u_prev, const ModelParams& p) {
  SimVehicle veh;
  veh.route = route;
  veh.id = id;
  veh.x_node = x;
  veh.s_node = v;
  veh.x_prev = x - p.delta * v;
  veh.s_prev = v;
  veh.x_prev2 = x - 2.0 * p.delta * v;
  veh.s_prev2 = v;
  veh.u_prev = u_prev;
  return veh;
}

// State at time t*delta - off, off in [0, delta + theta); piecewise-linear
// speed between nodes, trapezoidal (exact) position.
inline void sample_before_node(const SimVehicle& veh, double off,
                               const ModelParams& p, double* x, double* v) {
  if (off <= p.delta) {
    const double span = p.delta - off;  // from node t-1
    *v = veh.s_prev + (span / p.delta) * (veh.s_node - veh.s_prev);
    *x = veh.x_prev + 0.5 * span * (veh.s_prev + *v);
  } else {
    const double span = 2.0 * p.delta - off;  // from node t-2
    *v = veh.s_prev2 + (span / p.delta) * (veh.s_prev - veh.s_prev2);
    *x = veh.x_prev2 + 0.5 * span * (veh.s_prev2 + *v);
  }
}

}  // namespace detail

/// Runs the closed loop for the scenario's horizon. Deterministic for a fixed
/// seed. Vehicles past +L retire; a scheduled entry that would break the
/// same-route headway is deferred to the next tick and logged.
inline SimTrace run(const Scenario& sc, const StepProbeFn& probe = {}) {
  validate_scenario(sc);
  const ModelParams& p = sc.params;
  std::mt19937_64 rng(sc.seed);

  std::vector<detail::SimVehicle> routes[2];
  int next_id[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    for (const InitialVehicle& veh : sc.routes[k]) {
      routes[k].push_back(detail::seed_vehicle(k + 1, next_id[k]++, veh.x,
                                               veh.v, veh.u_prev, p));
    }
  }
  double next_spawn[2] = {
      sc.spawners[0] ? sc.spawners[0]->phase : 0.0,
      sc.spawners[1] ? sc.spawners[1]->phase : 0.0,
  };

  SimTrace trace;
  trace.scenario = sc;
  const CoordinateOptions opts{sc.condition3_guard};

  for (int tick = 0; tick < sc.horizon; ++tick) {
    const double now = tick * p.delta;
    StepProbe step;
    step.tick = tick;
    std::vector<TraceRow> tick_rows;

    for (int k = 0; k < 2; ++k) {
      auto& platoon = routes[k];
      if (platoon.empty()) continue;

      std::vector<DelayedObservation> observations;
      observations.reserve(platoon.size());
      for (const auto& veh : platoon) {
        DelayedObservation obs;
        detail::sample_before_node(veh, 2.0 * p.theta, p, &obs.x_hat,
                                   &obs.v_hat);
        obs.u_prev = veh.u_prev;
        obs.tick = tick;
        observations.push_back(obs);
      }
      const auto decisions = coordinate_route(observations, p, opts);

      double u_lead = 0.0;
      for (std::size_t i = 0; i < platoon.size(); ++i) {
        auto& veh = platoon[i];
        const double u_cmd = effective_command(decisions[i], veh.u_prev, p);

        TraceRow row;
        row.tick = tick;
        row.time_s = now;
        row.route = veh.route;
        row.vehicle_id = veh.id;
        detail::sample_before_node(veh, p.theta, p, &row.x_true, &row.v_true);
        row.x_obs = observations[i].x_hat;
        row.v_obs = observations[i].v_hat;
        row.u_cmd = u_cmd;
        if (i == 0) {
          row.decision = TraceDecision::kLead;
        } else if (decisions[i].kase == DecisionCase::kExplicit) {
          row.decision = TraceDecision::kExplicit;
        } else if (decisions[i].kase == DecisionCase::kClampedArgmin) {
          row.decision = TraceDecision::kClampedArgmin;
        } else {
          row.decision = TraceDecision::kInfeasible;
        }
        row.lambda = decisions[i].lambda_at_u;
        row.cond1 = decisions[i].cond1.holds;
        row.cond2 = decisions[i].cond2.holds;
        row.cond3 = i == 0 || condition3(u_cmd, veh.u_prev, u_lead, p).holds;
        row.cond4 = i == 0 || condition4(u_cmd, veh.u_prev, u_lead, p).holds;
        tick_rows.push_back(row);

        if (probe) {
          const VehicleRecord truth{veh.route, veh.id, veh.x_node, veh.s_node,
                                    veh.u_prev};
          step.items.push_back({truth, observations[i], u_cmd});
        }
        u_lead = u_cmd;

        // Advance truth to node t+1 under the fresh command. Noise-free runs
        // track the pursued target itself; the clipped interval's midpoint
        // would sag half an epsilon below a saturated command.
        const VehicleRole role =
            i == 0 ? VehicleRole::kLeader : VehicleRole::kFollower;
        const Interval reachable = speed_reachable_set(veh.s_node, u_cmd, p);
        const double s_next =
            sc.noise == NoiseKind::kZero
                ? reachable.clamp(clamp_target(veh.s_node, u_cmd, p))
                : realize_speed(sc.noise, reachable, role, rng);
        const double x_next = advance_position(veh.x_node, veh.s_node, s_next, p);
        veh.x_prev2 = veh.x_prev;
        veh.s_prev2 = veh.s_prev;
        veh.x_prev = veh.x_node;
        veh.s_prev = veh.s_node;
        veh.x_node = x_next;
        veh.s_node = s_next;
        veh.u_prev = u_cmd;
      }
    }

    // Ground-truth audit of this tick, mirrored into the rows.
    std::vector<const TraceRow*> row_ptrs;
    row_ptrs.reserve(tick_rows.size());
    for (const TraceRow& row : tick_rows) row_ptrs.push_back(&row);
    for (const SafetyViolation& v : tick_violations(row_ptrs, tick, p)) {
      for (TraceRow& row : tick_rows) {
        if (row.route == v.follower_route && row.vehicle_id == v.follower_id) {
          row.violation = true;
        }
      }
    }
    trace.rows.insert(trace.rows.end(), tick_rows.begin(), tick_rows.end());
    if (probe) probe(step);

    // Retirements, then entries for the next tick.
    for (int k = 0; k < 2; ++k) {
      auto& platoon = routes[k];
      for (std::size_t i = 0; i < platoon.size();) {
        if (platoon[i].x_node > p.zone_radius) {
          trace.retirements.push_back({tick, k + 1, platoon[i].id});
          platoon.erase(platoon.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
      if (!sc.spawners[k]) continue;
      const Spawner& sp = *sc.spawners[k];
      // An entry scheduled for time T materializes at the first node after
      // the tick that reaches T, uniformly for every phase.
      if (now + 1e-9 < next_spawn[k]) continue;
      const detail::SimVehicle entrant = detail::seed_vehicle(
          k + 1, next_id[k], -p.zone_radius, sp.speed, sp.speed, p);
      // Admission is judged on the tick-time samples the audit sees, not on
      // the node states: a faster leader sits theta*(v_l - v_e) closer at
      // the tick instant.
      double entry_x, entry_v;
      detail::sample_before_node(entrant, p.theta, p, &entry_x, &entry_v);
      bool admissible = true;
      if (!platoon.empty()) {
        double lead_x, lead_v;
        detail::sample_before_node(platoon.back(), p.theta, p, &lead_x, &lead_v);
        admissible = platoon.back().x_node > entrant.x_node &&
                     headway_ok(lead_x, entry_x, entry_v, true, false, p);
      }
      // Alternating-entry discipline: keep the cross-route headway to the
      // other route's most recent entrant already at the gate.
      const auto& other = routes[1 - k];
      if (admissible && !other.empty()) {
        double other_x, other_v;
        detail::sample_before_node(other.back(), p.theta, p, &other_x, &other_v);
        admissible = other.back().x_node > entrant.x_node &&
                     headway_ok(other_x, entry_x, entry_v, false, true, p);
      }
      if (!admissible) {
        trace.deferrals.push_back({tick, k + 1, "entry headway"});
        continue;
      }
      platoon.push_back(entrant);
      ++next_id[k];
      next_spawn[k] += sp.period;
    }
  }
  return trace;
}

/// Conflict-point crossings per second inside (t0, t1].
inline double throughput(const SimTrace& trace, double t0, double t1) {
  if (!(t1 > t0)) return 0.0;
  std::map<std::pair<int, int>, double> last_x;
  int crossings = 0;
  for (const TraceRow& row : trace.rows) {
    const auto key = std::make_pair(row.route, row.vehicle_id);
    const auto it = last_x.find(key);
    if (it != last_x.end()) {
      if (it->second < 0.0 && row.x_true >= 0.0 && row.time_s > t0 &&
          row.time_s <= t1) {
        ++crossings;
      }
      it->second = row.x_true;
    } else {
      last_x.emplace(key, row.x_true);
    }
  }
  return crossings / (t1 - t0);
}

}  // namespace crossing
