// SPDX-License-Identifier: Apache-2.0
#include "duplex/dof_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace duplex {

namespace {

constexpr double kMergeTol = 1e-12;

double cross(const DofPoint& o, const DofPoint& a, const DofPoint& b) {
  return (a.d_ab - o.d_ab) * (b.d_ba - o.d_ba) - (a.d_ba - o.d_ba) * (b.d_ab - o.d_ab);
}

double dist(const DofPoint& a, const DofPoint& b) { return std::hypot(a.d_ab - b.d_ab, a.d_ba - b.d_ba); }

double dist_to_segment(const DofPoint& p, const DofPoint& a, const DofPoint& b) {
  const double ex = b.d_ab - a.d_ab;
  const double ey = b.d_ba - a.d_ba;
  const double len2 = ex * ex + ey * ey;
  if (len2 == 0.0) return dist(p, a);
  const double s = std::clamp(((p.d_ab - a.d_ab) * ex + (p.d_ba - a.d_ba) * ey) / len2, 0.0, 1.0);
  return dist(p, DofPoint{a.d_ab + s * ex, a.d_ba + s * ey});
}

// Positive when p lies outside the region, measured against its edges.
double outside_distance(const DofRegion& region, const DofPoint& p) {
  const auto& v = region.vertices();
  if (v.size() == 1) return dist(p, v[0]);
  if (v.size() == 2) return dist_to_segment(p, v[0], v[1]);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    const double len = dist(a, b);
    worst = std::max(worst, -cross(a, b, p) / len);
  }
  return worst;
}

}  // namespace

DofPoint DofPoint::checked(double d_ab, double d_ba) {
  if (!std::isfinite(d_ab) || !std::isfinite(d_ba) || d_ab < 0.0 || d_ba < 0.0) {
    throw std::invalid_argument("DofPoint: coordinates must be finite and >= 0");
  }
  return {d_ab, d_ba};
}

DofRegion DofRegion::from_vertices(std::vector<DofPoint> vertices, double tol) {
  if (vertices.empty()) throw std::invalid_argument("DofRegion: no vertices");
  for (const auto& p : vertices) {
    if (!std::isfinite(p.d_ab) || !std::isfinite(p.d_ba) || p.d_ab < -tol || p.d_ba < -tol) {
      throw std::invalid_argument("DofRegion: vertex outside the first quadrant");
    }
  }
  DofRegion hull = convex_hull(vertices);
  const auto& h = hull.vertices();
  bool same = h.size() == vertices.size();
  for (std::size_t i = 0; same && i < h.size(); ++i) same = dist(h[i], vertices[i]) <= tol;
  if (!same) {
    throw std::invalid_argument(
        "DofRegion: vertices are not a counter-clockwise convex polygon closed against the axes");
  }
  return DofRegion(std::move(vertices));
}

double DofRegion::support(double ux, double uy) const noexcept {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, ux * v.d_ab + uy * v.d_ba);
  return best;
}

PowerCoupling::PowerCoupling(double gamma_exp, bool relay) : gamma_(gamma_exp) {
  if (!(gamma_exp > 0.0) || !std::isfinite(gamma_exp)) {
    throw std::invalid_argument("PowerCoupling: gamma must be positive and finite");
  }
  if (relay && gamma_exp > 1.0) throw std::invalid_argument("PowerCoupling: relay gamma must be <= 1");
}

void validate(const ScenarioSpec& net) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        bool ok = s.n_a >= 1 && s.n_b >= 1;
        if constexpr (!std::is_same_v<S, TwoWay>) ok = ok && s.n_r >= 1;
        if (!ok) throw std::invalid_argument("ScenarioSpec: antenna counts must be >= 1");
      },
      net);
}

void GridSpec::validate() const {
  if (tau_steps < 2 || gamma_steps < 2) throw std::invalid_argument("GridSpec: steps must be >= 2");
  if (!(gamma_max > 0.0)) throw std::invalid_argument("GridSpec: gamma_max must be > 0");
}

std::vector<double> GridSpec::tau_values() const {
  std::vector<double> v(tau_steps);
  const double n = static_cast<double>(tau_steps - 1);
  for (std::size_t k = 0; k < tau_steps; ++k) v[k] = static_cast<double>(k) / n;
  return v;
}

std::vector<double> GridSpec::gamma_values() const {
  std::vector<double> v(gamma_steps - 1);
  const double n = static_cast<double>(gamma_steps - 1);
  for (std::size_t k = 1; k < gamma_steps; ++k) v[k - 1] = gamma_max * static_cast<double>(k) / n;
  return v;
}

DofRegion convex_hull(const std::vector<DofPoint>& points) {
  std::vector<DofPoint> pts;
  pts.reserve(3 * points.size() + 1);
  pts.push_back({0.0, 0.0});
  for (const auto& p : points) {
    if (!std::isfinite(p.d_ab) || !std::isfinite(p.d_ba)) {
      throw std::invalid_argument("convex_hull: non-finite point");
    }
    const DofPoint q{std::max(0.0, p.d_ab), std::max(0.0, p.d_ba)};
    pts.push_back(q);
    pts.push_back({q.d_ab, 0.0});
    pts.push_back({0.0, q.d_ba});
  }

  std::sort(pts.begin(), pts.end(), [](const DofPoint& a, const DofPoint& b) {
    return a.d_ab < b.d_ab || (a.d_ab == b.d_ab && a.d_ba < b.d_ba);
  });
  std::vector<DofPoint> uniq;
  for (const auto& p : pts) {
    const std::size_t window = std::min<std::size_t>(uniq.size(), 8);
    const bool dup = std::any_of(uniq.end() - static_cast<std::ptrdiff_t>(window), uniq.end(),
                                 [&](const DofPoint& u) { return dist(u, p) <= kMergeTol; });
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() <= 2) return DofRegion(std::move(uniq));

  double scale = 1.0;
  for (const auto& p : uniq) scale = std::max({scale, p.d_ab, p.d_ba});
  const double eps = kMergeTol * scale * scale;

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<DofPoint> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], uniq[i]) <= eps) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);

  // Rotate so the origin (the lexicographically smallest point) comes first.
  auto origin = std::min_element(hull.begin(), hull.end(), [](const DofPoint& a, const DofPoint& b) {
    return a.d_ab + a.d_ba < b.d_ab + b.d_ba;
  });
  std::rotate(hull.begin(), origin, hull.end());
  return DofRegion(std::move(hull));
}

bool region_contains(const DofRegion& region, const DofPoint& p, double tol) {
  return outside_distance(region, p) <= tol;
}

double max_excess(const DofRegion& outer, const DofRegion& inner) {
  double worst = 0.0;
  for (const auto& v : outer.vertices()) worst = std::max(worst, outside_distance(inner, v));
  return worst;
}

bool region_strict_subset(const DofRegion& a, const DofRegion& b, double tol) {
  return max_excess(a, b) <= tol && max_excess(b, a) > tol;
}

double support_distance(const DofRegion& a, const DofRegion& b, int directions) {
  double worst = 0.0;
  for (int i = 0; i < directions; ++i) {
    const double theta = (std::numbers::pi / 2.0) * i / std::max(1, directions - 1);
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    worst = std::max(worst, std::abs(a.support(ux, uy) - b.support(ux, uy)));
  }
  return worst;
}

}  // namespace duplex
