#include "crossing/sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "crossing/trace_io.hpp"
#include "test_util.hpp"

using namespace crossing;

namespace {

Scenario two_vehicle_scenario() {
  Scenario sc;
  sc.params = testutil::p0();
  sc.routes[0] = {{50.0, 10.0, 10.0}, {30.0, 10.0, 10.0}};
  sc.noise = NoiseKind::kZero;
  sc.horizon = 200;
  sc.seed = 7;
  return sc;
}

}  // namespace

TEST(Run, CertifiedTwoVehicleRunIsCleanAndRetiresBoth) {
  const Scenario sc = two_vehicle_scenario();
  const SimTrace trace = run(sc);
  EXPECT_TRUE(audit_trace(trace, sc.params).empty());
  EXPECT_EQ(trace.retirements.size(), 2u);
  for (const TraceRow& row : trace.rows) EXPECT_FALSE(row.violation);
}

TEST(Run, SaturatedCruiseAdvancesExactly) {
  Scenario sc;
  sc.params = testutil::p0();
  sc.routes[0] = {{-200.0, 15.0, 15.0}};
  sc.horizon = 100;
  const SimTrace trace = run(sc);
  ASSERT_EQ(trace.rows.size(), 100u);
  for (std::size_t i = 1; i < trace.rows.size(); ++i) {
    EXPECT_NEAR(trace.rows[i].x_true - trace.rows[i - 1].x_true,
                sc.params.v_max * sc.params.delta, 1e-12);
    EXPECT_NEAR(trace.rows[i].v_true, 15.0, 1e-12);
  }
}

TEST(Run, EqualSeedsBitIdenticalTraces) {
  Scenario sc = two_vehicle_scenario();
  sc.noise = NoiseKind::kUniform;
  const SimTrace a = run(sc);
  const SimTrace b = run(sc);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].x_true, b.rows[i].x_true);
    EXPECT_EQ(a.rows[i].v_true, b.rows[i].v_true);
    EXPECT_EQ(a.rows[i].u_cmd, b.rows[i].u_cmd);
    EXPECT_EQ(a.rows[i].lambda, b.rows[i].lambda);
  }
  std::ostringstream csv_a, csv_b;
  write_trace_csv(a, csv_a);
  write_trace_csv(b, csv_b);
  EXPECT_EQ(csv_a.str(), csv_b.str());
}

TEST(Run, UniformNoiseStaysWithinEpsilonOfNoiseFreeTrack) {
  // Single vehicle: the front-vehicle policy is observation-independent, so
  // both runs issue identical commands and speeds may differ only by the
  // tracking uncertainty.
  Scenario zero;
  zero.params = testutil::p0();
  zero.routes[0] = {{-250.0, 10.0, 10.0}};
  zero.horizon = 300;
  Scenario noisy = zero;
  noisy.noise = NoiseKind::kUniform;
  noisy.seed = 8;
  const SimTrace a = run(zero);
  const SimTrace b = run(noisy);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].u_cmd, b.rows[i].u_cmd);
    EXPECT_LE(std::abs(a.rows[i].v_true - b.rows[i].v_true),
              zero.params.epsilon + 1e-12);
    differs = differs || a.rows[i].v_true != b.rows[i].v_true;
  }
  EXPECT_TRUE(differs);
}

TEST(Run, EstimatorBoxContainsTruthAtActuationTime) {
  for (const NoiseKind kind :
       {NoiseKind::kZero, NoiseKind::kUniform, NoiseKind::kAdversarial}) {
    Scenario sc;
    sc.params = testutil::p0();
    sc.routes[0] = {{80.0, 10.0, 10.0}, {55.0, 10.0, 10.0}, {30.0, 10.0, 10.0}};
    sc.noise = kind;
    sc.horizon = 400;
    sc.seed = 99;
    std::map<std::pair<int, int>, StateBox> predicted;
    int checked = 0;
    run(sc, [&](const StepProbe& step) {
      for (const auto& item : step.items) {
        const StateBox now = estimate_at_actuation(item.obs, sc.params);
        EXPECT_TRUE(now.pos.contains(item.truth.x, 1e-9));
        EXPECT_TRUE(now.spd.contains(item.truth.v, 1e-9));
        const auto key = std::make_pair(item.truth.route, item.truth.index);
        if (const auto it = predicted.find(key); it != predicted.end()) {
          EXPECT_TRUE(it->second.pos.contains(item.truth.x, 1e-9));
          EXPECT_TRUE(it->second.spd.contains(item.truth.v, 1e-9));
        }
        predicted[key] = predict_next(now, item.u_cmd, sc.params);
        ++checked;
      }
    });
    EXPECT_GT(checked, 450);  // three vehicles, full zone transits
  }
}

TEST(Run, EveryCommandIsFeasible) {
  Scenario sc = two_vehicle_scenario();
  sc.noise = NoiseKind::kAdversarial;
  run(sc, [&](const StepProbe& step) {
    for (const auto& item : step.items) {
      const Interval feasible = feasible_input_interval(item.truth.u_prev, sc.params);
      EXPECT_TRUE(feasible.contains(item.u_cmd, 1e-12));
    }
  });
}

TEST(Run, InfeasibleIsRecordedNotFatal) {
  Scenario sc;
  sc.params = testutil::p0();
  sc.routes[0] = {{50.0, 10.0, 10.0}, {41.0, 10.0, 10.0}};  // 9 m gap
  sc.horizon = 50;
  const SimTrace trace = run(sc);
  int infeasible = 0;
  for (const TraceRow& row : trace.rows) {
    if (row.decision == TraceDecision::kInfeasible) {
      ++infeasible;
      // Fallback command: maximal braking.
      EXPECT_NEAR(row.u_cmd, row.v_obs - 0.25, 0.5);
    }
  }
  EXPECT_GT(infeasible, 0);
  EXPECT_FALSE(audit_trace(trace, sc.params).empty());
}

TEST(Run, SpawnerDefersUnsafeEntries) {
  Scenario sc;
  sc.params = testutil::p0();
  sc.spawners[0] = Spawner{0.3, 10.0, 0.0};  // wants 3 m spacing, needs 10
  sc.horizon = 600;
  const SimTrace trace = run(sc);
  EXPECT_FALSE(trace.deferrals.empty());
  EXPECT_TRUE(audit_trace(trace, sc.params).empty());
  // Entries still happen, just rarefied to a safe cadence.
  std::map<int, int> vehicles;
  for (const TraceRow& row : trace.rows) vehicles[row.vehicle_id] = 1;
  EXPECT_GT(vehicles.size(), 3u);
}

TEST(Run, RejectsInvalidScenario) {
  Scenario sc = two_vehicle_scenario();
  sc.horizon = 0;
  EXPECT_THROW(run(sc), ConfigError);
}

TEST(Run, TickTruthIsMonotone) {
  Scenario sc = two_vehicle_scenario();
  sc.noise = NoiseKind::kUniform;
  const SimTrace trace = run(sc);
  std::map<int, double> last;
  for (const TraceRow& row : trace.rows) {
    if (const auto it = last.find(row.vehicle_id); it != last.end()) {
      EXPECT_GE(row.x_true, it->second);
    }
    last[row.vehicle_id] = row.x_true;
  }
}

TEST(Throughput, CountsConflictPointCrossings) {
  SimTrace trace;
  // Ten vehicles crossing x=0 one second apart.
  for (int v = 0; v < 10; ++v) {
    for (int tick = 0; tick <= 200; ++tick) {
      TraceRow row;
      row.tick = tick;
      row.time_s = tick * 0.1;
      row.route = 1;
      row.vehicle_id = v;
      row.x_true = -10.0 - v * 10.0 + tick;  // 10 m/s, staggered starts
      row.v_true = 10.0;
      trace.rows.push_back(row);
    }
  }
  EXPECT_DOUBLE_EQ(throughput(trace, 0.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(throughput(trace, 5.0, 5.0), 0.0);   // empty window
  EXPECT_DOUBLE_EQ(throughput(trace, 15.0, 20.0), 0.0);  // nothing crosses
}

TEST(TraceCsv, HeaderAndShape) {
  Scenario sc = two_vehicle_scenario();
  sc.horizon = 3;
  const SimTrace trace = run(sc);
  std::ostringstream out;
  write_trace_csv(trace, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, std::string(kTraceHeader));
  std::string row;
  int count = 0;
  while (std::getline(lines, row)) {
    ++count;
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 15);
  }
  EXPECT_EQ(count, 6);  // 2 vehicles x 3 ticks
}
