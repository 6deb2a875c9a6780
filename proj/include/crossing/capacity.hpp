#pragma once

#include <string>
#include <vector>

#include "crossing/params.hpp"

namespace crossing {

struct CapacityRow {
  double theta = 0.0;           // [s]
  double delta = 0.0;           // [s]
  double epsilon = 0.0;         // [m/s]
  double h = 0.0;               // [s]
  double v_max = 0.0;           // [m/s]
  double crossing_gap_d = 0.0;  // [s]
  double bound_f = 0.0;         // [vehicles/s]
};

// Extra time the position uncertainty costs per crossing at nominal speed:
// the predicted-position interval mapped onto the time axis.
inline double crossing_gap(const ModelParams& p) {
  return 2.0 * p.epsilon * (p.theta + p.delta) / p.v_max;
}

// Worst-case alternating discipline: one crossing every D + h seconds.
inline double capacity_bound_generic(double crossing_gap_d, double headway) {
  return 1.0 / (crossing_gap_d + headway);
}

// Same bound expressed directly in the model parameters.
inline double capacity_bound(const ModelParams& p) {
  return p.v_max / (2.0 * p.epsilon * (p.theta + p.delta) + p.h * p.v_max);
}

/// One swept grid point. Invalid parameter combinations are kept in the
/// output with the violated constraint in `status` instead of being dropped.
struct SweepEntry {
  CapacityRow row;
  bool ok = false;
  std::string status;  // "ok" or the violated constraint
};

struct SweepAxes {
  std::vector<double> theta;
  std::vector<double> delta;
  std::vector<double> epsilon;
  std::vector<double> h;
};

/// Tabulates the worst-case capacity bound over the cartesian grid, rows in
/// lexicographic order (theta outermost, h innermost). Axes left empty take
/// the base value.
inline std::vector<SweepEntry> sweep(const SweepAxes& axes,
                                     const ModelParams& base) {
  const auto axis = [](const std::vector<double>& values, double fallback) {
    return values.empty() ? std::vector<double>{fallback} : values;
  };
  const auto thetas = axis(axes.theta, base.theta);
  const auto deltas = axis(axes.delta, base.delta);
  const auto epsilons = axis(axes.epsilon, base.epsilon);
  const auto headways = axis(axes.h, base.h);

  std::vector<SweepEntry> entries;
  entries.reserve(thetas.size() * deltas.size() * epsilons.size() *
                  headways.size());
  for (double theta : thetas) {
    for (double delta : deltas) {
      for (double epsilon : epsilons) {
        for (double h : headways) {
          ModelParams point = base;
          point.theta = theta;
          point.delta = delta;
          point.epsilon = epsilon;
          point.h = h;
          SweepEntry entry;
          entry.row = {theta, delta, epsilon, h, base.v_max, 0.0, 0.0};
          try {
            validate(point);
            entry.row.crossing_gap_d = crossing_gap(point);
            entry.row.bound_f = capacity_bound(point);
            entry.ok = true;
            entry.status = "ok";
          } catch (const InvalidParam& err) {
            entry.ok = false;
            entry.status = std::string("invalid: ") + err.constraint();
          }
          entries.push_back(entry);
        }
      }
    }
  }
  return entries;
}

}  // namespace crossing
