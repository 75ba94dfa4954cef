// SPDX-License-Identifier: Apache-2.0
#include "duplex/dof_closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "duplex/errors.hpp"

namespace duplex {

namespace {

constexpr double kCompareTol = 1e-12;

void require_counts(std::initializer_list<int> counts, const char* where) {
  for (int n : counts) {
    if (n < 1) throw std::invalid_argument(std::string(where) + ": antenna counts must be >= 1");
  }
}

void require_fd(DuplexMode mode, const char* where) {
  if (!is_full_duplex(mode)) throw std::invalid_argument(std::string(where) + ": mode must be full duplex");
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Distinct (min(r_B, t_A), min(r_A, t_B)) pairs over all admissible splits.
std::vector<std::pair<int, int>> twoway_stream_pairs(int n_a, int n_b, DuplexMode mode) {
  std::set<std::pair<int, int>> pairs;
  for (int r_a = 1; r_a <= n_a - 1; ++r_a) {
    const int t_a = fd_transmit_antennas(n_a, mode, r_a);
    for (int r_b = 1; r_b <= n_b - 1; ++r_b) {
      const int t_b = fd_transmit_antennas(n_b, mode, r_b);
      pairs.emplace(std::min(r_b, t_a), std::min(r_a, t_b));
    }
  }
  return {pairs.begin(), pairs.end()};
}

// Best value of min(a (1 - gamma c), gamma b) over gamma in (0, 1] and the
// smallest gamma reaching it.
std::pair<double, double> relay_gamma_optimum(double a, double b, double c) {
  const double gamma = std::min(1.0, a / (b + a * c));
  return {std::min(b, a * b / (b + a * c)), gamma};
}

}  // namespace

DofRegion twoway_hd_region(int n_a, int n_b) {
  require_counts({n_a, n_b}, "twoway_hd_region");
  const double m = std::min(n_a, n_b);
  return convex_hull({{m, 0.0}, {0.0, m}});
}

DofPoint twoway_hd_point(int n_a, int n_b, double tau) {
  require_counts({n_a, n_b}, "twoway_hd_point");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("twoway_hd_point: tau must be in [0, 1]");
  const double m = std::min(n_a, n_b);
  return {tau * m, (1.0 - tau) * m};
}

DofPoint twoway_fd_point(int n_a, int n_b, DuplexMode mode, const AntennaSplit& split_a,
                         const AntennaSplit& split_b, PowerCoupling coupling, const SiParams& si) {
  require_counts({n_a, n_b}, "twoway_fd_point");
  require_fd(mode, "twoway_fd_point");
  if (antenna_allocation(n_a, mode, split_a.rx) != split_a ||
      antenna_allocation(n_b, mode, split_b.rx) != split_b) {
    throw FdSplitOutOfRange("twoway_fd_point: split does not match the hardware budget of the mode");
  }
  const double c = 1.0 - si.lambda();
  const double g = coupling.gamma();
  return DofPoint::checked(positive_part(1.0 - g * c) * std::min(split_b.rx, split_a.tx),
                           positive_part(1.0 - c / g) * std::min(split_a.rx, split_b.tx));
}

std::vector<double> twoway_gamma_values(const SiParams& si, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("twoway_gamma_values: steps must be >= 2");
  const double c = 1.0 - si.lambda();
  std::vector<double> g;
  g.reserve(2 * steps + 4);
  const double n = static_cast<double>(steps - 1);
  for (std::size_t k = 1; k < steps; ++k) {
    const double x = static_cast<double>(k) / n;
    g.push_back(x);
    g.push_back(1.0 / x);
  }
  g.push_back(1.0 / (2.0 - si.lambda()));
  g.push_back(2.0 - si.lambda());
  if (c > 0.0) {
    g.push_back(c);
    g.push_back(1.0 / c);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<DofPoint> twoway_fd_generators(int n_a, int n_b, DuplexMode mode, const SiParams& si,
                                           std::size_t gamma_steps) {
  require_counts({n_a, n_b}, "twoway_fd_generators");
  require_fd(mode, "twoway_fd_generators");
  const double c = 1.0 - si.lambda();
  const auto gammas = twoway_gamma_values(si, gamma_steps);
  std::vector<DofPoint> pts;
  for (const auto& [ab, ba] : twoway_stream_pairs(n_a, n_b, mode)) {
    for (double g : gammas) {
      pts.push_back({positive_part(1.0 - g * c) * ab, positive_part(1.0 - c / g) * ba});
    }
  }
  return pts;
}

DofRegion twoway_fd_region(int n_a, int n_b, DuplexMode mode, const SiParams& si,
                           std::size_t gamma_steps) {
  auto pts = twoway_fd_generators(n_a, n_b, mode, si, gamma_steps);
  // One node silent: the other link runs SI-free on the best split.
  int best_ab = 0;
  int best_ba = 0;
  for (const auto& [ab, ba] : twoway_stream_pairs(n_a, n_b, mode)) {
    best_ab = std::max(best_ab, ab);
    best_ba = std::max(best_ba, ba);
  }
  pts.push_back({static_cast<double>(best_ab), 0.0});
  pts.push_back({0.0, static_cast<double>(best_ba)});
  return convex_hull(pts);
}

Prop1Result prop1_check(int n_a, int n_b, const SiParams& si) {
  if (si.lambda() >= 1.0) throw std::invalid_argument("prop1_check: requires lambda < 1");
  Prop1Result res;
  const double m = std::min(n_a, n_b);
  const double c = 1.0 - si.lambda();
  res.bound = (1.0 - c * c) * m;
  for (const auto& p : twoway_fd_generators(n_a, n_b, DuplexMode::AntennaConservedFD, si)) {
    if (p.d_ab > 0.0 && p.d_ba > 0.0) res.max_interior_sum = std::max(res.max_interior_sum, p.d_ab + p.d_ba);
  }
  res.strictly_inside = res.max_interior_sum < m;
  return res;
}

namespace {

std::optional<DofPoint> prop2_construction(int n_a, int n_b, const SiParams& si) {
  require_counts({n_a, n_b}, "prop2_witness");
  const auto mode = DuplexMode::RfChainConservedFD;
  const int r_a = (2 * n_a) / 3;
  const int r_b = (2 * n_b) / 3;
  if (r_a < 1 || r_a > n_a - 1 || r_b < 1 || r_b > n_b - 1) return std::nullopt;
  return twoway_fd_point(n_a, n_b, mode, antenna_allocation(n_a, mode, r_a),
                         antenna_allocation(n_b, mode, r_b), PowerCoupling(1.0), si);
}

}  // namespace

std::optional<DofPoint> prop2_witness(int n_a, int n_b, const SiParams& si) {
  auto p = prop2_construction(n_a, n_b, si);
  if (!p || p->d_ab + p->d_ba <= std::min(n_a, n_b)) return std::nullopt;
  return p;
}

std::optional<double> prop2_threshold(int n_a, int n_b) {
  // At gamma = 1 both coordinates are linear in lambda.
  const auto p = prop2_construction(n_a, n_b, SiParams(1.0));
  if (!p) return std::nullopt;
  const double per_unit = p->d_ab + p->d_ba;
  const double needed = std::min(n_a, n_b);
  if (per_unit <= needed) return std::nullopt;
  return needed / per_unit;
}

HdRelayDof twohop_hd_dof(int n_a, int n_r, int n_b) {
  require_counts({n_a, n_r, n_b}, "twohop_hd_dof");
  const double a = n_a;
  const double r = n_r;
  const double b = n_b;
  if (n_r <= std::min(n_a, n_b)) return {0.5, r / 2.0};
  if (n_r >= std::max(n_a, n_b)) return {b / (b + a), a * b / (b + a)};
  if (n_a <= n_r && n_r <= n_b) return {r / (r + a), r * a / (r + a)};
  return {b / (b + r), r * b / (r + b)};
}

FdRelayDof twohop_fd_dof(int n_a, int n_r, int n_b, DuplexMode mode, const SiParams& si) {
  require_counts({n_a, n_r, n_b}, "twohop_fd_dof");
  require_fd(mode, "twohop_fd_dof");
  const double c = 1.0 - si.lambda();
  FdRelayDof best;
  for (int r = 1; r <= n_r - 1; ++r) {
    const int t = fd_transmit_antennas(n_r, mode, r);
    const double a = std::min(n_a, r);
    const double b = std::min(t, n_b);
    const auto [value, gamma] = relay_gamma_optimum(a, b, c);
    if (best.r_opt == 0 || value > best.dof + kCompareTol) best = {value, r, t, gamma};
  }
  return best;
}

double twohop_fd_symmetric_dof(int n, int n_r, DuplexMode mode, const SiParams& si) {
  require_counts({n, n_r}, "twohop_fd_symmetric_dof");
  require_fd(mode, "twohop_fd_symmetric_dof");
  const double streams = mode == DuplexMode::AntennaConservedFD
                             ? std::min<double>(n, n_r / 2.0)
                             : std::min<double>(n, (2 * n_r) / 3);
  return streams / (2.0 - si.lambda());
}

double twohop_fd_single_antenna_source_dof(int n_r, int n_b, DuplexMode mode, const SiParams& si) {
  require_counts({n_r, n_b}, "twohop_fd_single_antenna_source_dof");
  require_fd(mode, "twohop_fd_single_antenna_source_dof");
  if (n_r < 2) return 0.0;
  const double m = std::min(fd_transmit_antennas(n_r, mode, 1), n_b);
  return m / (m + 1.0 - si.lambda());
}

Crossover twohop_crossover(int n, DuplexMode mode, const SiParams& si, int search_limit) {
  require_counts({n}, "twohop_crossover");
  require_fd(mode, "twohop_crossover");
  const bool ac = mode == DuplexMode::AntennaConservedFD;
  const double lambda = si.lambda();

  Crossover out;
  out.threshold = (ac ? 1.0 : 0.75) * n * (2.0 - lambda);
  out.condition = ac ? "N_R > N(2-lambda)" : "N_R > (3/4)N(2-lambda)";
  if (lambda <= 0.0) return out;

  const int step = ac ? 2 : 3;
  const int first = static_cast<int>(std::floor(out.threshold + 1e-9)) + 1;
  const int rule = ((first + step - 1) / step) * step;
  if (rule <= search_limit) out.rule_n_r = rule;

  for (int n_r = 1; n_r <= search_limit; ++n_r) {
    const double hd = twohop_hd_dof(n, n_r, n).dof;
    const bool symmetric_form_applies = !ac || n_r % 2 == 0;
    if (!out.closed_form_n_r && symmetric_form_applies &&
        twohop_fd_symmetric_dof(n, n_r, mode, si) > hd + kCompareTol) {
      out.closed_form_n_r = n_r;
    }
    if (!out.exact_n_r && twohop_fd_dof(n, n_r, n, mode, si).dof > hd + kCompareTol) out.exact_n_r = n_r;
    if (out.closed_form_n_r && out.exact_n_r) break;
  }
  return out;
}

bool asym_crossover(int n_b, int n_r, const SiParams& si) {
  require_counts({n_b, n_r}, "asym_crossover");
  const double lambda = si.lambda();
  if (lambda <= 0.0) return false;
  return n_r > std::min<double>(n_b, 1.0 / lambda) + 1e-9;
}

TwrHdRegions twr_hd_regions(int n, int n_r) {
  require_counts({n, n_r}, "twr_hd_regions");
  const double m = std::min(n, n_r) / 2.0;
  const double s = std::min<double>(n, n_r / 2.0);
  std::vector<DofPoint> mac{{std::min(m, s), 0.0}, {0.0, std::min(m, s)}};
  if (s > m) {
    const double other = std::min(m, s - m);
    mac.push_back({m, other});
    mac.push_back({other, m});
  }
  return {convex_hull({{m, m}}), convex_hull(mac)};
}

TwrFdRegion twr_fd_region(int n_a, int n_r, int n_b, DuplexMode mode, const SiParams& si) {
  const double d_ab = twohop_fd_dof(n_a, n_r, n_b, mode, si).dof;
  const double d_ba = twohop_fd_dof(n_b, n_r, n_a, mode, si).dof;
  return {convex_hull({{d_ab, 0.0}, {0.0, d_ba}}), d_ab, d_ba};
}

}  // namespace duplex
