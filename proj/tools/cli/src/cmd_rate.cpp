// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "duplex/dof_closed_form.hpp"
#include "duplex/errors.hpp"
#include "duplex/rate_engine.hpp"
#include "duplex/slope_validator.hpp"
#include "report.hpp"

namespace duplex::cli {

namespace {

struct RatePair {
  RateEstimate ab;
  std::optional<RateEstimate> ba;
};

using PairBuilder = std::function<RatePair(double p, const McConfig& mc)>;

struct Curve {
  std::string mode;
  PairBuilder eval;
  std::optional<double> dof_ab;
  std::optional<double> dof_ba;
  bool two_way = false;
};

// Rates are cached per (power, sample count) so the slope fits and the
// per-SNR rows share one set of simulations.
class CachedCurve {
 public:
  explicit CachedCurve(PairBuilder f) : f_(std::move(f)) {}
  const RatePair& operator()(double p, const McConfig& mc) {
    const auto key = std::make_pair(p, mc.n_samples);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, f_(p, mc)).first;
    return it->second;
  }

 private:
  PairBuilder f_;
  std::map<std::pair<double, std::size_t>, RatePair> cache_;
};

double relay_objective(int n_a, int n_r, int n_b, DuplexMode mode, double lambda, int r, double g) {
  const double rx = std::max(0.0, 1.0 - g * (1.0 - lambda));
  const int t = fd_transmit_antennas(n_r, mode, r);
  return std::min({rx * n_a, rx * r, g * t, g * n_b});
}

struct RelayChoice {
  int r = 0;
  double gamma = 1.0;
  double dof = 0.0;
};

RelayChoice relay_choice(int n_a, int n_r, int n_b, DuplexMode mode, const SiParams& si,
                         std::optional<double> gamma) {
  if (n_r < 2) throw std::invalid_argument("FD relaying needs --nr >= 2");
  if (!gamma) {
    const FdRelayDof fd = twohop_fd_dof(n_a, n_r, n_b, mode, si);
    return {fd.r_opt, fd.gamma_opt, fd.dof};
  }
  RelayChoice best{1, *gamma, -1.0};
  for (int r = 1; r < n_r; ++r) {
    const double v = relay_objective(n_a, n_r, n_b, mode, si.lambda(), r, *gamma);
    if (v > best.dof + 1e-12) best = {r, *gamma, v};
  }
  return best;
}

std::vector<Curve> build_curves(RunConfig& cfg) {
  const SiParams si = cfg.si();
  const double gamma = cfg.gamma.value_or(1.0);
  std::vector<Curve> curves;

  if (cfg.scenario == Scenario::PointToPoint) {
    const int n_tx = cfg.n_a;
    const int n_rx = cfg.n_b;
    curves.push_back({"p2p",
                      [=](double p, const McConfig& mc) {
                        return RatePair{ergodic_rate(n_rx, n_tx, p, mc, Link::AB), std::nullopt};
                      },
                      static_cast<double>(std::min(n_tx, n_rx)), std::nullopt, false});
    return curves;
  }

  const bool needs_tau = cfg.scenario != Scenario::TwoHop;
  if (needs_tau && !cfg.tau) cfg.assumptions.push_back("tau not specified; using 0.5");
  const double tau = cfg.tau.value_or(0.5);

  for (DuplexMode mode : cfg.modes) {
    const std::string tag(mode_tag(mode));
    Curve c;
    c.mode = tag;
    switch (cfg.scenario) {
      case Scenario::TwoWay: {
        const TwoWay net{cfg.n_a, cfg.n_b};
        c.two_way = true;
        const double m = std::min(cfg.n_a, cfg.n_b);
        if (mode == DuplexMode::HalfDuplex) {
          c.eval = [=](double p, const McConfig& mc) {
            const auto r = twoway_hd_rates(net, {make_budget(p), make_budget(std::pow(p, gamma))}, tau, mc);
            return RatePair{r.r_ab, r.r_ba};
          };
          c.dof_ab = tau * m;
          c.dof_ba = (1.0 - tau) * gamma * m;
          break;
        }
        if (cfg.n_a < 2 || cfg.n_b < 2) throw std::invalid_argument("FD two-way needs --na, --nb >= 2");
        FdSplits best;
        DofPoint best_pt;
        double best_sum = -1.0;
        const PowerCoupling coupling(gamma);
        for (int r_a = 1; r_a < cfg.n_a; ++r_a) {
          for (int r_b = 1; r_b < cfg.n_b; ++r_b) {
            const DofPoint pt = twoway_fd_point(cfg.n_a, cfg.n_b, mode, antenna_allocation(cfg.n_a, mode, r_a),
                                                antenna_allocation(cfg.n_b, mode, r_b), coupling, si);
            if (pt.d_ab + pt.d_ba > best_sum + 1e-12) {
              best_sum = pt.d_ab + pt.d_ba;
              best = {r_a, r_b};
              best_pt = pt;
            }
          }
        }
        cfg.assumptions.push_back(
            fmt::format("{}: receive splits r_A={}, r_B={} maximize the DoF sum at gamma={}", tag, best.r_a,
                        best.r_b, format_number(gamma)));
        c.eval = [=](double p, const McConfig& mc) {
          const auto r =
              twoway_fd_rates(net, mode, {make_budget(p), make_budget(std::pow(p, gamma))}, si, best, mc);
          return RatePair{r.r_ab, r.r_ba};
        };
        c.dof_ab = best_pt.d_ab;
        c.dof_ba = best_pt.d_ba;
        break;
      }
      case Scenario::TwoHop: {
        const TwoHop net{cfg.n_a, cfg.n_r, cfg.n_b};
        if (mode == DuplexMode::HalfDuplex) {
          const std::optional<double> fixed_tau = cfg.tau;
          c.eval = [=](double p, const McConfig& mc) {
            const auto r = twohop_hd_rate(net, {make_budget(p), make_budget(std::pow(p, gamma)), make_budget(0.0)},
                                          fixed_tau, mc);
            return RatePair{r.r_ab, std::nullopt};
          };
          const double in = std::min(cfg.n_a, cfg.n_r);
          const double out = gamma * std::min(cfg.n_r, cfg.n_b);
          c.dof_ab = fixed_tau ? std::min(*fixed_tau * in, (1.0 - *fixed_tau) * out) : in * out / (in + out);
          break;
        }
        const RelayChoice ch = relay_choice(cfg.n_a, cfg.n_r, cfg.n_b, mode, si, cfg.gamma);
        cfg.assumptions.push_back(fmt::format("{}: relay receive antennas r={}, relay power P^{}", tag, ch.r,
                                              format_number(ch.gamma)));
        c.eval = [=](double p, const McConfig& mc) {
          const auto r = twohop_fd_rate_at(net, mode, {make_budget(p), make_budget(0.0), make_budget(0.0)}, si,
                                           ch.r, std::pow(p, ch.gamma), mc);
          return RatePair{r.r_ab, std::nullopt};
        };
        c.dof_ab = ch.dof;
        break;
      }
      case Scenario::TwoWayTwoHop: {
        const TwoWayTwoHop net{cfg.n_a, cfg.n_r, cfg.n_b};
        c.two_way = true;
        if (mode == DuplexMode::HalfDuplex) {
          c.eval = [=](double p, const McConfig& mc) {
            const double pr = std::pow(p, gamma);
            const auto r = twr_rates(net, mode, {make_budget(p), make_budget(pr), make_budget(p)}, si, tau, mc);
            return RatePair{r.r_ab, r.r_ba};
          };
          double a = std::min(tau * std::min(cfg.n_a, cfg.n_r), (1.0 - tau) * gamma * std::min(cfg.n_r, cfg.n_b));
          double b = std::min(tau * std::min(cfg.n_b, cfg.n_r), (1.0 - tau) * gamma * std::min(cfg.n_r, cfg.n_a));
          const double s = tau * std::min(cfg.n_r, cfg.n_a + cfg.n_b);
          if (a + b > s && a + b > 0.0) {
            const double f = s / (a + b);
            a *= f;
            b *= f;
          }
          c.dof_ab = a;
          c.dof_ba = b;
          break;
        }
        const RelayChoice fwd = relay_choice(cfg.n_a, cfg.n_r, cfg.n_b, mode, si, cfg.gamma);
        const RelayChoice rev = relay_choice(cfg.n_b, cfg.n_r, cfg.n_a, mode, si, cfg.gamma);
        cfg.assumptions.push_back(fmt::format("{}: A->B relay r={}, power P^{}; B->A relay r={}, power P^{}", tag,
                                              fwd.r, format_number(fwd.gamma), rev.r, format_number(rev.gamma)));
        const TwoHop ab{cfg.n_a, cfg.n_r, cfg.n_b};
        const TwoHop ba{cfg.n_b, cfg.n_r, cfg.n_a};
        c.eval = [=](double p, const McConfig& mc) {
          const RelayBudgets budgets{make_budget(p), make_budget(0.0), make_budget(p)};
          const RelayBudgets reverse{budgets.b, budgets.r, budgets.a};
          RateEstimate x = twohop_fd_rate_at(ab, mode, budgets, si, fwd.r, std::pow(p, fwd.gamma), mc).r_ab;
          RateEstimate y = twohop_fd_rate_at(ba, mode, reverse, si, rev.r, std::pow(p, rev.gamma), mc).r_ab;
          x.mean_rate *= tau;
          x.std_err *= tau;
          y.mean_rate *= 1.0 - tau;
          y.std_err *= 1.0 - tau;
          return RatePair{x, y};
        };
        c.dof_ab = tau * fwd.dof;
        c.dof_ba = (1.0 - tau) * rev.dof;
        break;
      }
      case Scenario::PointToPoint: break;
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

struct Fit {
  SlopeEstimate est;
  bool stable = true;
};

Fit fit_direction(const std::function<RateEstimate(double, const McConfig&)>& f, const std::vector<double>& grid,
                  const McConfig& mc, SlopeOptions opts) {
  try {
    return {estimate_dof(f, grid, mc, opts), true};
  } catch (const FitUnstable&) {
    opts.min_r_squared = 0.0;
    return {estimate_dof(f, grid, mc, opts), false};
  }
}

}  // namespace

Report cmd_rate(RunConfig& cfg) {
  Report report;
  const std::vector<double> grid = snr_grid_db(cfg.snr_min_db, cfg.snr_max_db, cfg.snr_step_db);
  if (grid.size() < 4) throw std::invalid_argument("SNR grid needs at least 4 points");
  McConfig mc;
  mc.seed = cfg.seed;
  mc.n_samples = cfg.samples.value_or(20000);
  SlopeOptions opts;
  opts.adaptive = !cfg.samples;

  auto curves = build_curves(cfg);

  Table rows{"", {"snr_db", "mode", "r_ab", "r_ab_stderr", "r_ba", "r_ba_stderr"}, {}};
  Table slopes{".slopes",
               {"mode", "direction", "slope", "intercept", "r_squared", "snr_low_db", "snr_high_db",
                "samples_per_point", "expected_dof"},
               {}};
  report.results["rates"] = nlohmann::json::array();
  report.results["slopes"] = nlohmann::json::array();

  struct Summary {
    std::string mode;
    std::string direction;
    Fit fit;
    std::optional<double> expected;
  };
  std::vector<Summary> summaries;
  std::vector<std::pair<Curve*, std::shared_ptr<CachedCurve>>> cached;
  std::vector<std::size_t> samples_used;

  for (auto& c : curves) {
    auto cache = std::make_shared<CachedCurve>(c.eval);
    const Fit ab = fit_direction([cache](double p, const McConfig& m) { return (*cache)(p, m).ab; }, grid, mc, opts);
    McConfig fixed = mc;
    fixed.n_samples = ab.est.samples_per_point;
    summaries.push_back({c.mode, "ab", ab, c.dof_ab});
    if (c.two_way) {
      SlopeOptions fixed_opts = opts;
      fixed_opts.adaptive = false;
      const Fit ba = fit_direction([cache](double p, const McConfig& m) { return *(*cache)(p, m).ba; }, grid,
                                   fixed, fixed_opts);
      summaries.push_back({c.mode, "ba", ba, c.dof_ba});
    }
    cached.emplace_back(&c, cache);
    samples_used.push_back(fixed.n_samples);
  }

  for (double snr : grid) {
    for (std::size_t i = 0; i < cached.size(); ++i) {
      McConfig m = mc;
      m.n_samples = samples_used[i];
      const RatePair& r = (*cached[i].second)(db_to_linear(snr), m);
      const std::string& mode = cached[i].first->mode;
      rows.rows.push_back({snr, mode, r.ab.mean_rate, r.ab.std_err, r.ba ? Cell{r.ba->mean_rate} : Cell{},
                           r.ba ? Cell{r.ba->std_err} : Cell{}});
      nlohmann::json j{{"snr_db", snr}, {"mode", mode}, {"r_ab", r.ab.mean_rate}, {"r_ab_stderr", r.ab.std_err}};
      j["r_ba"] = r.ba ? nlohmann::json(r.ba->mean_rate) : nlohmann::json(nullptr);
      j["r_ba_stderr"] = r.ba ? nlohmann::json(r.ba->std_err) : nlohmann::json(nullptr);
      report.results["rates"].push_back(j);
    }
  }

  for (const auto& s : summaries) {
    const SlopeEstimate& e = s.fit.est;
    slopes.rows.push_back({s.mode, s.direction, e.slope, e.intercept, e.r_squared, e.snr_window.first,
                           e.snr_window.second, static_cast<long long>(e.samples_per_point),
                           s.expected ? Cell{*s.expected} : Cell{}});
    nlohmann::json j{{"mode", s.mode},
                     {"direction", s.direction},
                     {"slope", e.slope},
                     {"intercept", e.intercept},
                     {"r_squared", e.r_squared},
                     {"snr_window_db", {e.snr_window.first, e.snr_window.second}},
                     {"samples_per_point", e.samples_per_point},
                     {"stable", s.fit.stable}};
    j["expected_dof"] = s.expected ? nlohmann::json(*s.expected) : nlohmann::json(nullptr);
    report.results["slopes"].push_back(j);
    if (s.expected) {
      add_oracle_row(report, s.mode, "slope_" + s.direction, *s.expected, e.slope, std::abs(e.slope - *s.expected));
    }
    if (!s.fit.stable) {
      report.exit_code = kFitUnstable;
      report.warnings.push_back(fmt::format("{} {}: slope fit unstable (r_squared {})", s.mode, s.direction,
                                            format_number(e.r_squared)));
    }
  }

  report.tables.insert(report.tables.begin(), std::move(slopes));
  report.tables.insert(report.tables.begin(), std::move(rows));
  return report;
}

}  // namespace duplex::cli
