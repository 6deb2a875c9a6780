#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "crossing/capacity.hpp"
#include "crossing/trace.hpp"

namespace crossing {

namespace detail {

inline std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace detail

inline constexpr const char* kTraceHeader =
    "tick,time_s,route,vehicle_id,x_true_m,v_true_mps,x_obs_m,v_obs_mps,"
    "u_cmd_mps,decision,lambda_m,cond1,cond2,cond3,cond4,violation";

inline void write_trace_csv(const SimTrace& trace, std::ostream& out) {
  out << kTraceHeader << "\n";
  for (const TraceRow& r : trace.rows) {
    out << r.tick << ',' << detail::csv_num(r.time_s) << ',' << r.route << ','
        << r.vehicle_id << ',' << detail::csv_num(r.x_true) << ','
        << detail::csv_num(r.v_true) << ',' << detail::csv_num(r.x_obs) << ','
        << detail::csv_num(r.v_obs) << ',' << detail::csv_num(r.u_cmd) << ','
        << to_string(r.decision) << ',' << detail::csv_num(r.lambda) << ','
        << int(r.cond1) << ',' << int(r.cond2) << ',' << int(r.cond3) << ','
        << int(r.cond4) << ',' << int(r.violation) << "\n";
  }
}

inline constexpr const char* kSweepHeader =
    "theta,delta,epsilon,h,v_max,crossing_gap_D,bound_F,status";

inline void write_sweep_csv(const std::vector<SweepEntry>& entries,
                            std::ostream& out) {
  out << kSweepHeader << "\n";
  for (const SweepEntry& e : entries) {
    out << detail::csv_num(e.row.theta) << ',' << detail::csv_num(e.row.delta)
        << ',' << detail::csv_num(e.row.epsilon) << ','
        << detail::csv_num(e.row.h) << ',' << detail::csv_num(e.row.v_max)
        << ',';
    if (e.ok) {
      out << detail::csv_num(e.row.crossing_gap_d) << ','
          << detail::csv_num(e.row.bound_f);
    } else {
      out << ',';
    }
    out << ',' << e.status << "\n";
  }
}

}  // namespace crossing
