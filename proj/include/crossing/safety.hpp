#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "crossing/controller.hpp"
#include "crossing/params.hpp"
#include "crossing/trace.hpp"

namespace crossing {

enum class ViolationKind { kSameRoute, kCrossRoute };

struct SafetyViolation {
  int tick = 0;
  int follower_route = 1;
  int leader_route = 1;
  int follower_id = 0;
  int leader_id = 0;
  double gap = 0.0;       // [m]
  double required = 0.0;  // [m]
  ViolationKind kind = ViolationKind::kSameRoute;
};

/// Ground-truth headway constraint. Same-route pairs owe h seconds of gap at
/// the follower's speed; cross-route pairs owe h_bar seconds, but only while
/// both are inside the interference region.
inline bool headway_ok(double x_lead, double x_follow, double v_follow,
                       bool same_route, bool both_in_interference,
                       const ModelParams& p) {
  if (!same_route && !both_in_interference) return true;
  const double required = (same_route ? p.h : p.h_bar) * v_follow;
  return x_lead - x_follow >= required;
}

/// Per-step certificate: a follower command satisfying this keeps the
/// existence guarantee alive at the next step. Holds iff value <= 0.
inline ConditionCheck condition3(double u_f_now, double u_f_prev,
                                 double u_l_now, const ModelParams& p) {
  const double value = (1.5 * p.delta + p.h) * u_f_now -
                       (0.5 * p.delta + p.h) * u_f_prev -
                       p.delta * u_l_now +
                       0.5 * p.delta * (p.accel_step() + p.epsilon);
  return {value, value <= 0.0};
}

/// Per-step certificate for the tightness guarantee. Holds iff value <= 0.
inline ConditionCheck condition4(double u_f_now, double u_f_prev,
                                 double u_l_now, const ModelParams& p) {
  const double value = (1.5 * p.delta + p.h) * u_f_now -
                       (0.5 * p.delta + p.h) * u_f_prev -
                       p.delta * u_l_now - 4.0 * p.epsilon * p.theta -
                       1.5 * p.epsilon * p.delta -
                       0.5 * p.a_max * p.delta * p.delta;
  return {value, value <= 0.0};
}

struct PairCertificate {
  int follower_id = 0;
  int leader_id = 0;
  ConditionCheck existence;  // initial-step form of condition 1
  ConditionCheck tightness;  // initial-step form of condition 2
};

struct CertificateReport {
  std::vector<PairCertificate> pairs;
  bool existence_ok = true;  // all pairs pass the existence part
  bool tightness_ok = true;  // all pairs pass both parts
};

/// Evaluates the initial-state certificate for one route, front first. The
/// leaders' first-step commands enter the inequalities, so the coordination
/// pass is run once to obtain them.
inline CertificateReport certify_initial(
    const std::vector<DelayedObservation>& vehicles, const ModelParams& p) {
  CertificateReport report;
  const auto decisions = coordinate_route(vehicles, p);
  for (std::size_t i = 1; i < vehicles.size(); ++i) {
    const double u_now_lead =
        effective_command(decisions[i - 1], vehicles[i - 1].u_prev, p);
    const PairSnapshot snap =
        make_pair_snapshot(vehicles[i], vehicles[i - 1], u_now_lead);
    PairCertificate cert;
    cert.follower_id = static_cast<int>(i);
    cert.leader_id = static_cast<int>(i) - 1;
    cert.existence = condition1(snap, p);
    cert.tightness = condition2(snap, p);
    report.existence_ok = report.existence_ok && cert.existence.holds;
    report.tightness_ok =
        report.tightness_ok && cert.existence.holds && cert.tightness.holds;
    report.pairs.push_back(cert);
  }
  return report;
}

/// Headway check over the vehicles present at one tick.
inline std::vector<SafetyViolation> tick_violations(
    const std::vector<const TraceRow*>& rows, int tick, const ModelParams& p) {
  std::vector<SafetyViolation> violations;
  std::vector<const TraceRow*> route[3];
  for (const TraceRow* r : rows) route[r->route].push_back(r);
  for (int k = 1; k <= 2; ++k) {
    std::sort(route[k].begin(), route[k].end(),
              [](const TraceRow* a, const TraceRow* b) {
                return a->x_true > b->x_true;
              });
    for (std::size_t i = 1; i < route[k].size(); ++i) {
      const TraceRow* lead = route[k][i - 1];
      const TraceRow* follow = route[k][i];
      if (!headway_ok(lead->x_true, follow->x_true, follow->v_true, true,
                      false, p)) {
        violations.push_back({tick, k, k, follow->vehicle_id,
                              lead->vehicle_id, lead->x_true - follow->x_true,
                              p.h * follow->v_true, ViolationKind::kSameRoute});
      }
    }
  }
  for (const TraceRow* a : route[1]) {
    if (std::abs(a->x_true) > p.conflict_radius) continue;
    for (const TraceRow* b : route[2]) {
      if (std::abs(b->x_true) > p.conflict_radius) continue;
      const TraceRow* lead = a->x_true >= b->x_true ? a : b;
      const TraceRow* follow = a->x_true >= b->x_true ? b : a;
      if (!headway_ok(lead->x_true, follow->x_true, follow->v_true, false,
                      true, p)) {
        violations.push_back({tick, follow->route, lead->route,
                              follow->vehicle_id, lead->vehicle_id,
                              lead->x_true - follow->x_true,
                              p.h_bar * follow->v_true,
                              ViolationKind::kCrossRoute});
      }
    }
  }
  return violations;
}

/// Checks the ground-truth headway constraints at every recorded tick.
/// Returns every violation, not just the first.
inline std::vector<SafetyViolation> audit_trace(const SimTrace& trace,
                                                const ModelParams& p) {
  std::map<int, std::vector<const TraceRow*>> by_tick;
  for (const TraceRow& row : trace.rows) by_tick[row.tick].push_back(&row);
  std::vector<SafetyViolation> violations;
  for (auto& [tick, rows] : by_tick) {
    auto found = tick_violations(rows, tick, p);
    violations.insert(violations.end(), found.begin(), found.end());
  }
  return violations;
}

}  // namespace crossing
