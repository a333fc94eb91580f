#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sft/oracle.hpp"
#include "sft/projection.hpp"
#include "sft/selfcheck.hpp"

using namespace sft;

namespace {

const DynamicSet kInfo1({-0.6, 0.6}, 1.0);
const DynamicSet kSkewed({0.3, -0.2}, 2.0);

// Extremum of gauge_eval(F, x - w) over n evenly spaced boundary points.
double dense_boundary(const DynamicSet& F, const ReferenceSet& o, Vec2 x, bool maximize,
                      int n = 1000000) {
  double best = maximize ? -INFINITY : INFINITY;
  for (int i = 0; i < n; ++i) {
    const double v = gauge_eval(F, x - boundary_point(o, static_cast<double>(i) / n));
    best = maximize ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

}  // namespace

TEST(SetGauge, WorkedExampleWitness) {
  const ProjectionResult p = set_gauge(kInfo1, Box({30, 350}, 15.0), {100, 100});
  EXPECT_EQ(p.witness, Vec2(45, 335));
  EXPECT_TRUE(p.at_boundary);
  EXPECT_NEAR(p.value, gauge_eval(kInfo1, {55, -235}), 1e-12);
}

TEST(SetGauge, InteriorPointIsZeroWithSelfWitness) {
  const ReferenceSet shapes[] = {Box({30, 350}, 15.0), Disk({0, 0}, 3)};
  const Vec2 pts[] = {{35, 340}, {1, -1}};
  for (int i = 0; i < 2; ++i) {
    const ProjectionResult p = set_gauge(kSkewed, shapes[i], pts[i]);
    EXPECT_EQ(p.value, 0.0);
    EXPECT_EQ(p.witness, pts[i]);
    EXPECT_FALSE(p.at_boundary);
  }
}

TEST(SetGauge, DiskMatchesDenseSampling) {
  const ReferenceSet d = Disk({210, 10}, 10);
  const double v = set_gauge(kSkewed, d, {300, 200}).value;
  EXPECT_NEAR(v, dense_boundary(kSkewed, d, {300, 200}, false), 1e-6 * v);
}

TEST(SetGauge, BoxMatchesDenseSampling) {
  const ReferenceSet b = Box({30, 350}, 15.0);
  const double v = set_gauge(kInfo1, b, {100, 100}).value;
  EXPECT_NEAR(v, dense_boundary(kInfo1, b, {100, 100}, false), 1e-6 * v);
}

TEST(Msmg, BoxFarthestCornerWithTieBreak) {
  const ProjectionResult p = msmg(DynamicSet({0, 0}, 1.0), Box({0, 0}, 1.0), {5, 0});
  EXPECT_NEAR(p.value, std::sqrt(37.0), 1e-12);
  // (-1,-1) and (-1,1) tie; the first in enumeration order wins.
  EXPECT_EQ(p.witness, Vec2(-1, -1));
}

TEST(Msmg, BoxWitnessIsAVertex) {
  const Box b({3, 4}, Vec2{2, 5});
  const ProjectionResult p = msmg(kSkewed, b, {-20, 17});
  const auto v = vertices(b);
  EXPECT_NE(std::find(v.begin(), v.end(), p.witness), v.end());
  double best = 0.0;
  for (const Vec2& w : v) best = std::max(best, gauge_eval(kSkewed, Vec2{-20, 17} - w));
  EXPECT_NEAR(p.value, best, 1e-9);
}

TEST(Msmg, DiskCenterMatchesSampling) {
  const ReferenceSet d = Disk({5, -5}, 4);
  const double v = msmg(kSkewed, d, {5, -5}).value;
  EXPECT_NEAR(v, dense_boundary(kSkewed, d, {5, -5}, true), 1e-6 * v);
}

TEST(Msmg, DiskMatchesDenseSampling) {
  const DynamicSet F({-0.6, 0.6}, 2.0);
  const ReferenceSet d = Disk({30, 350}, 10);
  const ProjectionResult p = msmg(F, d, {189, 56});
  EXPECT_NEAR(p.value, dense_boundary(F, d, {189, 56}, true), 1e-6 * p.value);
  EXPECT_TRUE(on_boundary(d, p.witness, 1e-9));
}

TEST(Enlargement, Membership) {
  const ReferenceSet d = Disk({0, 0}, 2);
  EXPECT_TRUE(r_enlargement_contains(kSkewed, d, 0.5, {1, 1}));
  // x = w + r f with w on the boundary and f on bd F: exactly at level r.
  const double r = 3.0;
  const Vec2 w{2, 0};
  const Vec2 f = kSkewed.wind() + Vec2{1, 0} * kSkewed.speed();
  EXPECT_NEAR(set_gauge(kSkewed, d, w + f * r).value, r, 1e-9);
  EXPECT_TRUE(r_enlargement_contains(kSkewed, d, r, w + f * r));
  EXPECT_FALSE(r_enlargement_contains(kSkewed, d, r, w + f * (2 * r)));
  EXPECT_THROW(r_enlargement_contains(kSkewed, d, 0.0, {1, 1}), std::invalid_argument);
}

TEST(Enlargement, ShiftedLevelSet) {
  // rho^Omega(x) = rho^{Omega_r}(x) + r, with Omega_r sampled on a fine grid.
  const ReferenceSet d = Disk({0, 0}, 1);
  const double r = 2.0;
  const Vec2 x{15, -9};
  double best = INFINITY;
  for (double a = -8; a <= 8; a += 0.05) {
    for (double b = -8; b <= 8; b += 0.05) {
      if (set_gauge(kSkewed, d, {a, b}).value <= r) {
        best = std::min(best, gauge_eval(kSkewed, x - Vec2{a, b}));
      }
    }
  }
  EXPECT_NEAR(set_gauge(kSkewed, d, x).value, best + r, 0.05);
}

TEST(EuclidWitness, BoundsTheExactProjections) {
  const ReferenceSet b = Box({30, 350}, 15.0);
  const Vec2 x{100, 100};
  const auto en = euclid_witness_nearest(kInfo1, b, x);
  EXPECT_EQ(en.witness, Vec2(45, 335));
  EXPECT_GE(en.value, set_gauge(kInfo1, b, x).value - 1e-12);
  const ReferenceSet d = Disk({0, 0}, 5);
  const auto ef = euclid_witness_farthest(kSkewed, d, {20, 0});
  EXPECT_NEAR(ef.witness.x1, -5.0, 1e-12);
  EXPECT_LE(ef.value, msmg(kSkewed, d, {20, 0}).value + 1e-12);
}

TEST(Oracle, SampleBoundaryBoxMaxEqualsVertexMax) {
  const ReferenceSet b = Box({0, 0}, Vec2{3, 1});
  const Vec2 x{7, 2};
  double best = 0.0;
  for (const Vec2& w : vertices(std::get<Box>(b))) best = std::max(best, gauge_eval(kSkewed, x - w));
  EXPECT_NEAR(oracle::sample_boundary_extremum(kSkewed, b, x, oracle::Mode::Max, 1024), best, 1e-9);
  EXPECT_THROW(oracle::sample_boundary_extremum(kSkewed, b, x, oracle::Mode::Max, 100),
               std::invalid_argument);
}

TEST(Projection, PropertySuite) {
  for (const auto& c : selfcheck::projection_suite()) {
    EXPECT_TRUE(c.passed) << c.name << ": worst " << c.worst << ' ' << c.detail;
  }
}
