// Batch front-end: simulate scenarios, check initial-state certificates,
// and tabulate the latency-to-capacity bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossing/crossing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // violation / uncertified
constexpr int kExitUsage = 2;   // usage, parse, or IO failure

int cmd_run(const std::string& config, const std::string& trace_path,
            const std::vector<std::uint64_t>& seed,
            const std::vector<double>& window) {
  crossing::Scenario sc = crossing::parse_scenario_file(config);
  if (!seed.empty()) sc.seed = seed.front();
  const crossing::SimTrace trace = crossing::run(sc);

  std::ofstream out(trace_path);
  if (!out) {
    std::cerr << "cannot open trace output: " << trace_path << "\n";
    return kExitUsage;
  }
  crossing::write_trace_csv(trace, out);

  double t0 = 0.0;
  double t1 = sc.horizon * sc.params.delta;
  if (window.size() == 2) {
    t0 = window[0];
    t1 = window[1];
  }
  const auto violations = crossing::audit_trace(trace, sc.params);
  int infeasible = 0;
  for (const auto& row : trace.rows) {
    if (row.decision == crossing::TraceDecision::kInfeasible) ++infeasible;
  }
  std::printf("throughput: %.6g veh/s over (%.6g, %.6g] s\n",
              crossing::throughput(trace, t0, t1), t0, t1);
  std::printf("violations: %zu\n", violations.size());
  std::printf("infeasible: %d\n", infeasible);
  std::printf("deferred entries: %zu, retirements: %zu, rows: %zu\n",
              trace.deferrals.size(), trace.retirements.size(),
              trace.rows.size());
  return violations.empty() ? kExitOk : kExitDomain;
}

int cmd_check(const std::string& config) {
  const crossing::Scenario sc = crossing::parse_scenario_file(config);
  bool all_exist = true;
  bool any_pair = false;
  for (int k = 0; k < 2; ++k) {
    std::vector<crossing::DelayedObservation> obs;
    for (const auto& veh : sc.routes[k]) {
      obs.push_back({veh.x, veh.v, veh.u_prev, 0});
    }
    const auto report = crossing::certify_initial(obs, sc.params);
    for (const auto& pair : report.pairs) {
      any_pair = true;
      std::printf(
          "route %d pair %d->%d: existence %.6g (%s), tightness %.6g (%s)\n",
          k + 1, pair.follower_id, pair.leader_id, pair.existence.value,
          pair.existence.holds ? "pass" : "FAIL", pair.tightness.value,
          pair.tightness.holds ? "pass" : "fail");
    }
    all_exist = all_exist && report.existence_ok;
  }
  if (!any_pair) std::printf("no pairs\n");
  std::printf("certificate: %s\n", all_exist ? "pass" : "FAIL");
  return all_exist ? kExitOk : kExitDomain;
}

int cmd_bound(const std::string& config) {
  const crossing::Scenario sc = crossing::parse_scenario_file(config);
  const double d = crossing::crossing_gap(sc.params);
  const double f = crossing::capacity_bound(sc.params);
  std::printf("D=%.6g s, F>=%.5f veh/s\n", d, f);
  return kExitOk;
}

int cmd_sweep(const std::string& config, const std::string& out_path) {
  const crossing::Scenario sc = crossing::parse_scenario_file(config);
  std::ifstream in(config);
  const auto axes_cfg = crossing::parse_sweep_axes(in);
  crossing::SweepAxes axes{axes_cfg.theta, axes_cfg.delta, axes_cfg.epsilon,
                           axes_cfg.h};
  const auto entries = crossing::sweep(axes, sc.params);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open sweep output: " << out_path << "\n";
    return kExitUsage;
  }
  crossing::write_sweep_csv(entries, out);
  std::size_t invalid = 0;
  for (const auto& e : entries) invalid += e.ok ? 0 : 1;
  std::printf("sweep: %zu rows (%zu invalid) -> %s\n", entries.size(), invalid,
              out_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signal-free intersection coordination under latency"};
  app.require_subcommand(1);

  std::string config;
  std::string trace_path;
  std::string sweep_out;
  std::vector<std::uint64_t> seed;
  std::vector<double> window;

  auto* run = app.add_subcommand("run", "simulate a scenario, write trace CSV");
  run->add_option("--config", config, "scenario file")->required();
  run->add_option("--trace", trace_path, "trace CSV output")->required();
  run->add_option("--seed", seed, "override scenario seed")->expected(1);
  run->add_option("--window", window, "throughput window t0 t1 [s]")
      ->expected(2);

  auto* check = app.add_subcommand("check", "initial-state safety certificate");
  check->add_option("--config", config, "scenario file")->required();

  auto* bound = app.add_subcommand("bound", "analytic capacity bound");
  bound->add_option("--config", config, "scenario file")->required();

  auto* sweep = app.add_subcommand("sweep", "capacity bound over a grid");
  sweep->add_option("--config", config, "scenario file with [sweep]")
      ->required();
  sweep->add_option("--out", sweep_out, "sweep CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitOk;
  }

  try {
    if (run->parsed()) return cmd_run(config, trace_path, seed, window);
    if (check->parsed()) return cmd_check(config);
    if (bound->parsed()) return cmd_bound(config);
    if (sweep->parsed()) return cmd_sweep(config, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
