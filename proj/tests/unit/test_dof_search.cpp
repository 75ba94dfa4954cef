// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "duplex/dof_closed_form.hpp"
#include "duplex/dof_search.hpp"
#include "duplex/errors.hpp"

using namespace duplex;

namespace {

bool same_vertices(const DofRegion& a, const DofRegion& b, double tol = 1e-12) {
  if (a.vertices().size() != b.vertices().size()) return false;
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    if (std::abs(a.vertices()[i].d_ab - b.vertices()[i].d_ab) > tol) return false;
    if (std::abs(a.vertices()[i].d_ba - b.vertices()[i].d_ba) > tol) return false;
  }
  return true;
}

}  // namespace

TEST(GridSpec, Values) {
  GridSpec g;
  g.tau_steps = 5;
  g.gamma_steps = 5;
  g.gamma_max = 2.0;
  EXPECT_EQ(g.tau_values(), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(g.gamma_values(), (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
  g.tau_steps = 1;
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(GridMaximin, SymmetricTimeSharing) {
  GridSpec g;
  g.gamma_steps = 2;
  const auto res = grid_maximin([](double tau, double, int) { return std::min(2 * tau, 2 * (1 - tau)); },
                                std::nullopt, g);
  EXPECT_DOUBLE_EQ(res.best_value, 1.0);
  EXPECT_DOUBLE_EQ(res.argmax.tau, 0.5);
  EXPECT_EQ(res.argmax.r, 0);
}

TEST(GridMaximin, HdRelayCase) {
  GridSpec g;
  g.gamma_steps = 2;
  const auto res = grid_maximin([](double tau, double, int) { return std::min(tau * 2.0, (1 - tau) * 3.0); },
                                std::nullopt, g);
  EXPECT_NEAR(res.best_value, 1.2, 1e-3);
  EXPECT_NEAR(res.argmax.tau, 0.6, 1.0 / 2000);
}

TEST(GridMaximin, FdRelaySymmetric) {
  GridSpec g;
  g.tau_steps = 2;
  const double c = 0.5;
  const auto res = grid_maximin(
      [&](double, double gamma, int r) {
        const double rx = 1 - gamma * c;
        return std::min({rx * 4, rx * r, gamma * (8 - r), gamma * 4});
      },
      8, g);
  EXPECT_NEAR(res.best_value, 8.0 / 3.0, 2e-3);
  EXPECT_EQ(res.argmax.r, 4);
  EXPECT_NEAR(res.argmax.gamma, 2.0 / 3.0, 1e-3);
}

TEST(GridMaximin, ExactPointsAndEmptyDomain) {
  GridSpec g;
  g.tau_steps = 3;
  g.gamma_steps = 3;
  g.include_exact_points = {{0.3, 0.7}};
  const auto res = grid_maximin([](double tau, double gamma, int) { return -std::abs(tau - 0.3) - std::abs(gamma - 0.7); },
                                std::nullopt, g);
  EXPECT_DOUBLE_EQ(res.best_value, 0.0);
  EXPECT_THROW(grid_maximin([](double, double, int) { return 0.0; }, 1, g), EmptyDomain);
}

TEST(GridMaximin, RefinementConverges) {
  auto objective = [](double, double gamma, int r) {
    const double rx = 1 - gamma * 0.25;
    return std::min({rx * 5, rx * r, gamma * 2.0 * (9 - r), gamma * 6});
  };
  GridSpec coarse, fine;
  coarse.tau_steps = fine.tau_steps = 2;
  coarse.gamma_steps = 2001;
  fine.gamma_steps = 4001;
  const double a = grid_maximin(objective, 9, coarse).best_value;
  const double b = grid_maximin(objective, 9, fine).best_value;
  EXPECT_GE(b, a);
  EXPECT_LT(b - a, 1e-3);
}

TEST(ConvexHull, Examples) {
  const DofRegion tri = convex_hull({{1, 0}, {0, 1}, {0.5, 0.5}});
  EXPECT_EQ(tri.vertices(), (std::vector<DofPoint>{{0, 0}, {1, 0}, {0, 1}}));
  const DofRegion sq = convex_hull({{2, 0}, {0, 2}, {2, 2}});
  EXPECT_EQ(sq.vertices(), (std::vector<DofPoint>{{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  EXPECT_EQ(convex_hull({}).vertices(), (std::vector<DofPoint>{{0, 0}}));
  EXPECT_EQ(convex_hull({{3, 0}}).vertices(), (std::vector<DofPoint>{{0, 0}, {3, 0}}));
}

TEST(ConvexHull, MergesNearDuplicatesAndCollinear) {
  const DofRegion r = convex_hull({{1, 1}, {1 + 1e-13, 1}, {2, 0}, {0, 2}, {1.5, 0.5}});
  EXPECT_EQ(r.vertices().size(), 3u);
  EXPECT_THROW(convex_hull({{std::nan(""), 1.0}}), std::invalid_argument);
}

TEST(ConvexHull, IdempotentAndMonotone) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DofPoint> s, t;
    for (int i = 0; i < 12; ++i) s.push_back({u(rng), u(rng)});
    t = s;
    for (int i = 0; i < 6; ++i) t.push_back({u(rng), u(rng)});
    const DofRegion hs = convex_hull(s);
    EXPECT_TRUE(same_vertices(convex_hull(hs.vertices()), hs));
    EXPECT_LE(max_excess(hs, convex_hull(t)), 1e-12);
    for (const auto& p : s) EXPECT_TRUE(region_contains(hs, p));
  }
}

TEST(DofRegion, FromVerticesValidates) {
  EXPECT_NO_THROW(DofRegion::from_vertices({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_THROW(DofRegion::from_vertices({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(DofRegion::from_vertices({{0, 0}, {1, 0}, {0.2, 0.2}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(DofPoint::checked(-1.0, 0.0), std::invalid_argument);
}

TEST(RegionPredicates, Examples) {
  const DofRegion unit = convex_hull({{1, 0}, {0, 1}});
  EXPECT_TRUE(region_contains(unit, {0.2, 0.2}));
  EXPECT_TRUE(region_contains(unit, {0.5, 0.5}));
  EXPECT_FALSE(region_contains(unit, {0.6, 0.5}));
  EXPECT_TRUE(region_contains(unit, {0.6, 0.5}, 0.1));

  const DofRegion hd = twoway_hd_region(4, 6);
  EXPECT_TRUE(region_strict_subset(twoway_fd_region(4, 6, DuplexMode::AntennaConservedFD, SiParams(0.9)), hd));
  const DofRegion hd6 = twoway_hd_region(6, 6);
  EXPECT_FALSE(region_strict_subset(twoway_fd_region(6, 6, DuplexMode::RfChainConservedFD, SiParams(0.9)), hd6));
  EXPECT_FALSE(region_strict_subset(hd, hd));
}

TEST(RegionPredicates, DegenerateRegions) {
  const DofRegion seg = convex_hull({{2, 0}});
  EXPECT_TRUE(region_contains(seg, {1, 0}));
  EXPECT_FALSE(region_contains(seg, {1, 0.1}));
  EXPECT_TRUE(region_contains(DofRegion{}, {0, 0}));
  EXPECT_FALSE(region_contains(DofRegion{}, {1e-6, 0}));
}

TEST(SupportDistance, ZeroForSameRegion) {
  const DofRegion r = convex_hull({{3, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(support_distance(r, r), 0.0);
  EXPECT_NEAR(support_distance(r, convex_hull({{3, 1}, {1, 2.5}})), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(r.max_sum(), 4.0);
}
