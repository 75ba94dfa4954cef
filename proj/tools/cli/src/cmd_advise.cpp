// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include <fmt/format.h>

#include "duplex/dof_closed_form.hpp"
#include "report.hpp"

namespace duplex::cli {

namespace {

constexpr double kTieTol = 1e-9;

struct Advice {
  std::string objective;
  std::string recommended;
  double margin = 0.0;
  std::string condition;
  double hd = 0.0;
  std::string best_fd_mode;
  double best_fd = 0.0;
};

// HD wins ties: FD only pays off when strictly better.
Advice decide(const std::string& objective, double hd, const std::vector<std::pair<std::string, double>>& fd) {
  Advice a;
  a.objective = objective;
  a.hd = hd;
  a.best_fd = -1.0;
  for (const auto& [tag, v] : fd) {
    if (v > a.best_fd + kTieTol) {
      a.best_fd = v;
      a.best_fd_mode = tag;
    }
  }
  if (fd.empty()) a.best_fd = 0.0;
  if (!fd.empty() && a.best_fd > hd + kTieTol) {
    a.recommended = a.best_fd_mode;
    a.margin = a.best_fd - hd;
  } else {
    a.recommended = "hd";
    a.margin = hd - a.best_fd;
  }
  return a;
}

nlohmann::json advice_json(const Advice& a) {
  nlohmann::json j{{"objective", a.objective},
                   {"recommended_mode", a.recommended},
                   {"margin_dof", a.margin},
                   {"binding_condition", a.condition},
                   {"hd_dof", a.hd}};
  j["best_fd_mode"] = a.best_fd_mode.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.best_fd_mode);
  j["best_fd_dof"] = a.best_fd_mode.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.best_fd);
  return j;
}

std::vector<DuplexMode> fd_modes(const RunConfig& cfg) {
  std::vector<DuplexMode> v;
  for (auto m : cfg.modes) {
    if (is_full_duplex(m)) v.push_back(m);
  }
  return v;
}

std::vector<Advice> advise_two_hop(const RunConfig& cfg, nlohmann::json& results) {
  const SiParams si = cfg.si();
  const double hd = twohop_hd_dof(cfg.n_a, cfg.n_r, cfg.n_b).dof;
  results["dof"]["hd"] = hd;
  std::vector<std::pair<std::string, double>> fd;
  for (auto m : fd_modes(cfg)) {
    const double v = twohop_fd_dof(cfg.n_a, cfg.n_r, cfg.n_b, m, si).dof;
    fd.emplace_back(std::string(mode_tag(m)), v);
    results["dof"][std::string(mode_tag(m))] = v;
  }
  Advice a = decide("max_min_dof", hd, fd);

  const std::string focus = a.best_fd_mode.empty() ? "" : a.best_fd_mode;
  const auto focus_mode = parse_mode_tag(focus);
  if (!focus_mode) {
    a.condition = "no full-duplex mode requested";
  } else if (cfg.n_a == cfg.n_b) {
    const Crossover x = twohop_crossover(cfg.n_a, *focus_mode, si);
    a.condition = x.condition;
    results["threshold"] = x.threshold;
  } else if (cfg.n_a == 1 && *focus_mode == DuplexMode::AntennaConservedFD && cfg.n_r <= cfg.n_b) {
    a.condition = "lambda > 1/N_R";
    results["threshold"] = 1.0 / cfg.n_r;
  } else if (cfg.n_a == 1 && *focus_mode == DuplexMode::AntennaConservedFD) {
    a.condition = "N_R > min(N_B, 1/lambda)";
  } else {
    a.condition = "FD max-min DoF > HD max-min DoF";
  }
  return {a};
}

std::vector<Advice> advise_two_way(const RunConfig& cfg, nlohmann::json& results) {
  const SiParams si = cfg.si();
  const double hd = std::min(cfg.n_a, cfg.n_b);
  results["sum_dof"]["hd"] = hd;
  std::vector<std::pair<std::string, double>> fd;
  for (auto m : fd_modes(cfg)) {
    const double v = twoway_fd_region(cfg.n_a, cfg.n_b, m, si).max_sum();
    fd.emplace_back(std::string(mode_tag(m)), v);
    results["sum_dof"][std::string(mode_tag(m))] = v;
  }
  Advice a = decide("max_sum_dof", hd, fd);
  if (a.best_fd_mode == "rc") {
    const auto t = prop2_threshold(cfg.n_a, cfg.n_b);
    if (t) {
      a.condition = fmt::format("lambda > {} (gamma = 1, r = floor(2N/3))", format_number(*t));
      results["threshold"] = *t;
    } else {
      a.condition = "FD sum DoF > min(N_A, N_B)";
    }
  } else if (a.best_fd_mode == "ac" && si.lambda() < 1.0) {
    a.condition = "sum DoF <= (1-(1-lambda)^2) min(N_A, N_B) < min(N_A, N_B)";
  } else {
    a.condition = "FD sum DoF > min(N_A, N_B)";
  }
  return {a};
}

std::vector<Advice> advise_twr(const RunConfig& cfg, nlohmann::json& results) {
  if (cfg.n_a != cfg.n_b) throw std::invalid_argument("two-way relaying advice needs --na equal to --nb");
  const SiParams si = cfg.si();
  const int n = cfg.n_a;
  const double m = std::min(n, cfg.n_r) / 2.0;
  const double s = std::min<double>(n, cfg.n_r / 2.0);
  const double hd_sym = std::min(m, s / 2.0);
  const double hd_corner = std::min(m, s);

  std::vector<std::pair<std::string, double>> sym;
  std::vector<std::pair<std::string, double>> corner;
  results["symmetric_dof"]["hd"] = hd_sym;
  results["corner_dof"]["hd"] = hd_corner;
  for (auto mode : fd_modes(cfg)) {
    const TwrFdRegion fd = twr_fd_region(cfg.n_a, cfg.n_r, cfg.n_b, mode, si);
    const double total = fd.d_ab + fd.d_ba;
    const double d_sym = total > 0.0 ? fd.d_ab * fd.d_ba / total : 0.0;
    const std::string tag(mode_tag(mode));
    sym.emplace_back(tag, d_sym);
    corner.emplace_back(tag, std::max(fd.d_ab, fd.d_ba));
    results["symmetric_dof"][tag] = d_sym;
    results["corner_dof"][tag] = std::max(fd.d_ab, fd.d_ba);
  }
  Advice a = decide("symmetric", hd_sym, sym);
  a.condition = "d_sym(FD) = d_AB d_BA / (d_AB + d_BA) > min(min(N, N_R)/2, min(N, N_R/2)/2)";
  Advice c = decide("corner", hd_corner, corner);
  c.condition = "max(d_AB, d_BA) > min(min(N, N_R)/2, min(N, N_R/2))";
  return {a, c};
}

}  // namespace

Report cmd_advise(RunConfig& cfg) {
  Report report;
  std::vector<Advice> advice;
  switch (cfg.scenario) {
    case Scenario::TwoHop: advice = advise_two_hop(cfg, report.results); break;
    case Scenario::TwoWay: advice = advise_two_way(cfg, report.results); break;
    case Scenario::TwoWayTwoHop: advice = advise_twr(cfg, report.results); break;
    case Scenario::PointToPoint: throw std::invalid_argument("advise does not support p2p");
  }

  const Advice& primary = advice.front();
  report.results["recommended_mode"] = primary.recommended;
  report.results["margin_dof"] = primary.margin;
  report.results["binding_condition"] = primary.condition;
  if (advice.size() > 1) report.results["corner_advantage"] = advice_json(advice[1]);

  Table t{"",
          {"objective", "recommended_mode", "margin_dof", "binding_condition", "hd_dof", "best_fd_mode",
           "best_fd_dof"},
          {}};
  for (const auto& a : advice) {
    t.rows.push_back({a.objective, a.recommended, a.margin, a.condition, a.hd,
                      a.best_fd_mode.empty() ? Cell{} : Cell{a.best_fd_mode},
                      a.best_fd_mode.empty() ? Cell{} : Cell{a.best_fd}});
  }
  report.tables.push_back(std::move(t));
  return report;
}

}  // namespace duplex::cli
