// SPDX-License-Identifier: Apache-2.0
//
// Brute-force tools: exhaustive max-min over (tau, gamma, r) grids, convex
// hulls of DoF generator points, and region predicates. These are the
// independent references the closed-form expressions are checked against.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "duplex/dof_types.hpp"
#include "duplex/errors.hpp"

namespace duplex {

// tau runs over tau_steps uniform nodes of [0, 1] (both ends included);
// gamma over the gamma_steps - 1 positive nodes of a uniform grid on
// [0, gamma_max]. Extra (tau, gamma) pairs are evaluated verbatim.
struct GridSpec {
  std::size_t tau_steps = 2001;
  std::size_t gamma_steps = 2001;
  double gamma_max = 1.0;
  std::vector<std::pair<double, double>> include_exact_points;

  void validate() const;
  std::vector<double> tau_values() const;
  std::vector<double> gamma_values() const;
};

struct GridArgmax {
  double tau = 0.0;
  double gamma = 0.0;
  int r = 0;
};

struct GridResult {
  double best_value = 0.0;
  GridArgmax argmax;
  std::size_t evaluations = 0;
};

namespace detail {

inline bool lex_less(const GridArgmax& a, const GridArgmax& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.gamma != b.gamma) return a.gamma < b.gamma;
  return a.tau < b.tau;
}

}  // namespace detail

// Exhaustive maximization of objective(tau, gamma, r).
// With a relay antenna count, r runs over 1..n_r-1 (EmptyDomain if n_r < 2);
// without one, r is fixed to 0. Ties go to the smallest r, then gamma, then tau.
template <class Objective>
GridResult grid_maximin(Objective&& objective, std::optional<int> n_r, const GridSpec& grid) {
  grid.validate();
  int r_lo = 0;
  int r_hi = 0;
  if (n_r) {
    if (*n_r < 2) throw EmptyDomain("grid_maximin: need at least 2 relay antennas for an FD split");
    r_lo = 1;
    r_hi = *n_r - 1;
  }
  const auto taus = grid.tau_values();
  const auto gammas = grid.gamma_values();

  GridResult best;
  bool have = false;
  auto consider = [&](double tau, double gamma, int r) {
    const double v = objective(tau, gamma, r);
    ++best.evaluations;
    const GridArgmax at{tau, gamma, r};
    if (!have || v > best.best_value || (v == best.best_value && detail::lex_less(at, best.argmax))) {
      best.best_value = v;
      best.argmax = at;
      have = true;
    }
  };

  for (int r = r_lo; r <= r_hi; ++r) {
    for (double g : gammas) {
      for (double t : taus) consider(t, g, r);
    }
    for (const auto& [t, g] : grid.include_exact_points) consider(t, g, r);
  }
  return best;
}

// Smallest downward-closed convex polygon containing the points, the origin
// and the axis projections of every point. Points closer than 1e-12 merge.
DofRegion convex_hull(const std::vector<DofPoint>& points);

bool region_contains(const DofRegion& region, const DofPoint& p, double tol = 1e-9);

// a is inside b and some vertex of b sits more than tol outside a.
bool region_strict_subset(const DofRegion& a, const DofRegion& b, double tol = 1e-9);

// Largest distance by which any vertex of `outer` leaves `inner` (0 if none).
double max_excess(const DofRegion& outer, const DofRegion& inner);

// Max |h_a(u) - h_b(u)| of the support functions over `directions` unit
// vectors spread across the first quadrant.
double support_distance(const DofRegion& a, const DofRegion& b, int directions = 181);

}  // namespace duplex
