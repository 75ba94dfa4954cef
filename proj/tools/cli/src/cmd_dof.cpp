// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "duplex/dof_closed_form.hpp"
#include "duplex/dof_search.hpp"
#include "report.hpp"

namespace duplex::cli {

namespace {

nlohmann::json region_json(const DofRegion& region) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : region.vertices()) a.push_back({v.d_ab, v.d_ba});
  return a;
}

void add_region(Report& report, const std::string& tag, const DofRegion& region) {
  report.results["regions"][tag] = region_json(region);
  report.results["max_sum"][tag] = region.max_sum();
  Table t{"." + tag, {"mode", "vertex_index", "d_ab", "d_ba"}, {}};
  long long k = 0;
  for (const auto& v : region.vertices()) t.rows.push_back({tag, k++, v.d_ab, v.d_ba});
  report.tables.push_back(std::move(t));
}

// Independent brute-force regions built straight from the DoF expressions.

DofRegion hd_time_sharing_oracle(double m) {
  GridSpec grid;
  std::vector<DofPoint> pts{{0.0, 0.0}};
  for (double tau : grid.tau_values()) pts.push_back({tau * m, (1.0 - tau) * m});
  return convex_hull(pts);
}

std::vector<double> oracle_gammas(double c) {
  if (c <= 0.0 || c >= 1.0) return {1.0};
  constexpr int kNodes = 4001;
  std::vector<double> g(kNodes);
  const double lo = std::log(c);
  for (int k = 0; k < kNodes; ++k) g[k] = std::exp(lo - 2.0 * lo * k / (kNodes - 1));
  return g;
}

DofRegion twoway_fd_oracle(int n_a, int n_b, DuplexMode mode, double lambda) {
  const double c = 1.0 - lambda;
  const int t_factor = mode == DuplexMode::RfChainConservedFD ? 2 : 1;
  std::vector<DofPoint> pts{{0.0, 0.0}};
  for (int r_a = 1; r_a < n_a; ++r_a) {
    for (int r_b = 1; r_b < n_b; ++r_b) {
      const int t_a = t_factor * (n_a - r_a);
      const int t_b = t_factor * (n_b - r_b);
      // gamma -> 0 and gamma -> infinity: one direction runs without SI.
      pts.push_back({static_cast<double>(std::min(r_b, t_a)), 0.0});
      pts.push_back({0.0, static_cast<double>(std::min(r_a, t_b))});
      for (double g : oracle_gammas(c)) {
        const double d_ab = std::max(0.0, 1.0 - g * c) * std::min(r_b, t_a);
        const double d_ba = std::max(0.0, 1.0 - c / g) * std::min(r_a, t_b);
        pts.push_back({d_ab, d_ba});
      }
    }
  }
  return convex_hull(pts);
}

GridResult hd_relay_oracle(int n_a, int n_r, int n_b) {
  GridSpec grid;
  grid.tau_steps = 27721;
  grid.gamma_steps = 2;
  const double in = std::min(n_a, n_r);
  const double out = std::min(n_r, n_b);
  return grid_maximin([&](double tau, double, int) { return std::min(tau * in, (1.0 - tau) * out); },
                      std::nullopt, grid);
}

GridResult fd_relay_oracle(int n_a, int n_r, int n_b, DuplexMode mode, double lambda) {
  GridSpec grid;
  grid.tau_steps = 2;
  grid.gamma_steps = 20001;
  const double c = 1.0 - lambda;
  const int t_factor = mode == DuplexMode::RfChainConservedFD ? 2 : 1;
  return grid_maximin(
      [&](double, double g, int r) {
        const double rx = 1.0 - g * c;
        const double t = t_factor * (n_r - r);
        return std::min({rx * n_a, rx * r, g * t, g * n_b});
      },
      n_r, grid);
}

void dof_two_way(const RunConfig& cfg, Report& report) {
  const SiParams si = cfg.si();
  for (DuplexMode mode : cfg.modes) {
    const std::string tag(mode_tag(mode));
    if (mode == DuplexMode::HalfDuplex) {
      const DofRegion region = twoway_hd_region(cfg.n_a, cfg.n_b);
      add_region(report, tag, region);
      const DofRegion oracle = hd_time_sharing_oracle(std::min(cfg.n_a, cfg.n_b));
      add_oracle_row(report, tag, "region_support", std::nullopt, std::nullopt, support_distance(region, oracle));
    } else {
      const DofRegion region = twoway_fd_region(cfg.n_a, cfg.n_b, mode, si);
      add_region(report, tag, region);
      const DofRegion oracle = twoway_fd_oracle(cfg.n_a, cfg.n_b, mode, si.lambda());
      add_oracle_row(report, tag, "region_support", std::nullopt, std::nullopt, support_distance(region, oracle));
    }
  }
}

void dof_two_hop(const RunConfig& cfg, Report& report) {
  const SiParams si = cfg.si();
  Table t{"", {"mode", "tau_opt", "gamma_opt", "r_opt", "dof"}, {}};
  report.results["dof"] = nlohmann::json::array();
  for (DuplexMode mode : cfg.modes) {
    const std::string tag(mode_tag(mode));
    if (mode == DuplexMode::HalfDuplex) {
      const HdRelayDof hd = twohop_hd_dof(cfg.n_a, cfg.n_r, cfg.n_b);
      t.rows.push_back({tag, hd.tau_opt, 1.0, Cell{}, hd.dof});
      report.results["dof"].push_back(
          {{"mode", tag}, {"tau_opt", hd.tau_opt}, {"gamma_opt", 1.0}, {"r_opt", nullptr}, {"dof", hd.dof}});
      const GridResult g = hd_relay_oracle(cfg.n_a, cfg.n_r, cfg.n_b);
      add_oracle_row(report, tag, "dof", hd.dof, g.best_value, std::abs(hd.dof - g.best_value));
      continue;
    }
    const FdRelayDof fd = twohop_fd_dof(cfg.n_a, cfg.n_r, cfg.n_b, mode, si);
    nlohmann::json row{{"mode", tag}, {"tau_opt", nullptr}, {"dof", fd.dof}};
    if (fd.r_opt > 0) {
      t.rows.push_back({tag, Cell{}, fd.gamma_opt, static_cast<long long>(fd.r_opt), fd.dof});
      row["gamma_opt"] = fd.gamma_opt;
      row["r_opt"] = fd.r_opt;
      const GridResult g = fd_relay_oracle(cfg.n_a, cfg.n_r, cfg.n_b, mode, si.lambda());
      add_oracle_row(report, tag, "dof", fd.dof, g.best_value, std::abs(fd.dof - g.best_value));
    } else {
      t.rows.push_back({tag, Cell{}, Cell{}, Cell{}, fd.dof});
      row["gamma_opt"] = nullptr;
      row["r_opt"] = nullptr;
      report.warnings.push_back("relay with fewer than 2 antennas cannot run " + tag + "; DoF reported as 0");
    }
    report.results["dof"].push_back(row);
  }
  report.tables.insert(report.tables.begin(), std::move(t));
}

// MAC phase (tau) then BC phase: per-user cut min(N, N_R), sum cut min(N_R, 2N).
DofRegion twr_hd_oracle(int n, int n_r, bool with_sum) {
  GridSpec grid;
  std::vector<DofPoint> pts{{0.0, 0.0}};
  const double user = std::min(n, n_r);
  const double sum = std::min(n_r, 2 * n);
  for (double tau : grid.tau_values()) {
    const double share = std::min(tau, 1.0 - tau);
    const double a = share * user;
    const double s = with_sum ? share * sum : 2.0 * a;
    const double b = std::min(a, std::max(0.0, s - a));
    pts.push_back({std::min(a, s), 0.0});
    pts.push_back({0.0, std::min(a, s)});
    pts.push_back({a, b});
    pts.push_back({b, a});
  }
  return convex_hull(pts);
}

void dof_twr(const RunConfig& cfg, Report& report) {
  const SiParams si = cfg.si();
  for (DuplexMode mode : cfg.modes) {
    const std::string tag(mode_tag(mode));
    if (mode == DuplexMode::HalfDuplex) {
      if (cfg.n_a != cfg.n_b) throw std::invalid_argument("HD two-way relaying needs --na equal to --nb");
      const TwrHdRegions hd = twr_hd_regions(cfg.n_a, cfg.n_r);
      add_region(report, "hd_ub", hd.upper_bound);
      add_region(report, "hd_macbc", hd.mac_bc);
      add_oracle_row(report, "hd_ub", "region_support", std::nullopt, std::nullopt,
                     support_distance(hd.upper_bound, twr_hd_oracle(cfg.n_a, cfg.n_r, false)));
      add_oracle_row(report, "hd_macbc", "region_support", std::nullopt, std::nullopt,
                     support_distance(hd.mac_bc, twr_hd_oracle(cfg.n_a, cfg.n_r, true)));
      continue;
    }
    const TwrFdRegion fd = twr_fd_region(cfg.n_a, cfg.n_r, cfg.n_b, mode, si);
    add_region(report, tag, fd.region);
    report.results["one_way_dof"][tag] = {{"d_ab", fd.d_ab}, {"d_ba", fd.d_ba}};
    if (cfg.n_r >= 2) {
      const double ab = fd_relay_oracle(cfg.n_a, cfg.n_r, cfg.n_b, mode, si.lambda()).best_value;
      const double ba = fd_relay_oracle(cfg.n_b, cfg.n_r, cfg.n_a, mode, si.lambda()).best_value;
      GridSpec grid;
      std::vector<DofPoint> pts;
      for (double tau : grid.tau_values()) pts.push_back({tau * ab, (1.0 - tau) * ba});
      add_oracle_row(report, tag, "region_support", std::nullopt, std::nullopt,
                     support_distance(fd.region, convex_hull(pts)));
    }
  }
}

}  // namespace

Report cmd_dof(RunConfig& cfg) {
  Report report;
  switch (cfg.scenario) {
    case Scenario::TwoWay: dof_two_way(cfg, report); break;
    case Scenario::TwoHop: dof_two_hop(cfg, report); break;
    case Scenario::TwoWayTwoHop: dof_twr(cfg, report); break;
    case Scenario::PointToPoint: throw std::invalid_argument("dof does not support p2p");
  }
  return report;
}

}  // namespace duplex::cli
