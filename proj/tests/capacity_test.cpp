#include "crossing/capacity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "test_util.hpp"

using namespace crossing;

namespace {

long long ulp_distance(double a, double b) {
  long long ia, ib;
  std::memcpy(&ia, &a, sizeof(a));
  std::memcpy(&ib, &b, sizeof(b));
  return std::llabs(ia - ib);
}

}  // namespace

TEST(CrossingGap, Examples) {
  ModelParams p = testutil::p0();
  EXPECT_NEAR(crossing_gap(p), 0.0008, 1e-15);
  p.epsilon = 0.0;
  EXPECT_DOUBLE_EQ(crossing_gap(p), 0.0);
}

TEST(CrossingGap, LinearInEpsilon) {
  ModelParams p = testutil::p0();
  ModelParams doubled = p;
  doubled.epsilon = 2 * p.epsilon;
  EXPECT_DOUBLE_EQ(crossing_gap(doubled), 2 * crossing_gap(p));
}

TEST(CapacityBoundGeneric, Examples) {
  EXPECT_DOUBLE_EQ(capacity_bound_generic(0.0, 1.0), 1.0);
  EXPECT_NEAR(capacity_bound_generic(0.0008, 1.0), 1.0 / 1.0008, 1e-15);
  EXPECT_DOUBLE_EQ(capacity_bound_generic(1.0, 1.0), 0.5);
}

TEST(CapacityBound, ReferenceValueIsTheExactRational) {
  // 15 / (2*0.05*0.12 + 15) = 15/15.012 = 1250/1251.
  const double bound = capacity_bound(testutil::p0());
  EXPECT_LE(ulp_distance(bound, 1250.0 / 1251.0), 2);
}

TEST(CapacityBound, Examples) {
  ModelParams p = testutil::p0();
  p.epsilon = 0.0;
  EXPECT_NEAR(capacity_bound(p), 1.0 / p.h, 1e-15);

  p = testutil::p0();
  p.epsilon = 0.1;
  p.theta = 0.05;
  EXPECT_NEAR(capacity_bound(p), 500.0 / 501.0, 1e-15);  // 15/15.03
}

TEST(CapacityBound, MatchesGenericRouteAlgebraically) {
  EXPECT_LE(ulp_distance(capacity_bound(testutil::p0()),
                         capacity_bound_generic(crossing_gap(testutil::p0()),
                                                testutil::p0().h)),
            4);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 5000; ++i) {
    ModelParams p = testutil::p0();
    p.delta = testutil::uniform(rng, 0.01, 1.0);
    p.theta = testutil::uniform(rng, 0.0, 0.999 * p.delta);
    p.a_max = testutil::uniform(rng, 0.5, 8.0);
    p.epsilon = testutil::uniform(rng, 0.0, p.a_max * p.delta);
    p.v_max = testutil::uniform(rng, 1.0, 40.0);
    p.h = testutil::uniform(rng, 0.1, 5.0);
    p.h_bar = p.h;
    EXPECT_LE(ulp_distance(capacity_bound(p),
                           capacity_bound_generic(crossing_gap(p), p.h)),
              4);
  }
}

TEST(CapacityBound, CeilingAtInverseHeadway) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    ModelParams p = testutil::p0();
    p.delta = testutil::uniform(rng, 0.01, 1.0);
    p.theta = testutil::uniform(rng, 0.0, 0.999 * p.delta);
    p.epsilon = testutil::uniform(rng, 0.0, p.a_max * p.delta);
    p.h = testutil::uniform(rng, 0.1, 5.0);
    p.h_bar = p.h;
    EXPECT_LE(capacity_bound(p), 1.0 / p.h + 1e-15);
    if (p.epsilon > 1e-6) {
      EXPECT_LT(capacity_bound(p), 1.0 / p.h);
    }
  }
}

TEST(CapacityBound, StrictlyDecreasingInEachParameter) {
  const ModelParams base = testutil::p0();
  auto bump = [&](auto setter) {
    ModelParams p = base;
    setter(p);
    return capacity_bound(p);
  };
  const double f0 = capacity_bound(base);
  EXPECT_LT(bump([](ModelParams& p) { p.theta += 0.01; }), f0);
  EXPECT_LT(bump([](ModelParams& p) { p.delta += 0.01; }), f0);
  EXPECT_LT(bump([](ModelParams& p) { p.epsilon += 0.01; }), f0);
  EXPECT_LT(bump([](ModelParams& p) { p.h += 0.01; }), f0);
}

TEST(Sweep, SingletonGridEchoesBound) {
  const ModelParams p = testutil::p0();
  const auto entries = sweep({}, p);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_TRUE(entries[0].ok);
  EXPECT_EQ(entries[0].status, "ok");
  EXPECT_DOUBLE_EQ(entries[0].row.bound_f, capacity_bound(p));
  EXPECT_DOUBLE_EQ(entries[0].row.crossing_gap_d, crossing_gap(p));
  EXPECT_DOUBLE_EQ(entries[0].row.v_max, p.v_max);
}

TEST(Sweep, LatencyAxisMonotone) {
  SweepAxes axes;
  axes.theta = {0.0, 0.02, 0.05};
  const auto entries = sweep(axes, testutil::p0());
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_GT(entries[0].row.bound_f, entries[1].row.bound_f);
  EXPECT_GT(entries[1].row.bound_f, entries[2].row.bound_f);
}

TEST(Sweep, InvalidPointsAreAnnotatedNotDropped) {
  SweepAxes axes;
  axes.epsilon = {0.05, 0.5};  // 0.5 > a_max*delta = 0.3
  const auto entries = sweep(axes, testutil::p0());
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_TRUE(entries[0].ok);
  EXPECT_FALSE(entries[1].ok);
  EXPECT_EQ(entries[1].status, "invalid: epsilon <= a_max*delta");
  EXPECT_DOUBLE_EQ(entries[1].row.epsilon, 0.5);  // grid point still reported
}

TEST(Sweep, LexicographicGridOrder) {
  SweepAxes axes;
  axes.theta = {0.0, 0.02};
  axes.h = {1.0, 2.0};
  const auto entries = sweep(axes, testutil::p0());
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_DOUBLE_EQ(entries[0].row.theta, 0.0);
  EXPECT_DOUBLE_EQ(entries[0].row.h, 1.0);
  EXPECT_DOUBLE_EQ(entries[1].row.theta, 0.0);
  EXPECT_DOUBLE_EQ(entries[1].row.h, 2.0);
  EXPECT_DOUBLE_EQ(entries[2].row.theta, 0.02);
  EXPECT_DOUBLE_EQ(entries[2].row.h, 1.0);
  EXPECT_DOUBLE_EQ(entries[3].row.theta, 0.02);
  EXPECT_DOUBLE_EQ(entries[3].row.h, 2.0);
}
