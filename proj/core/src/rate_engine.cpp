// SPDX-License-Identifier: Apache-2.0
#include "duplex/rate_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "duplex/errors.hpp"

namespace duplex {

namespace {

RateEstimate scaled(const RateEstimate& e, double f) { return {f * e.mean_rate, f * e.std_err, e.n_samples}; }

const RateEstimate& smaller(const RateEstimate& x, const RateEstimate& y) {
  return y.mean_rate < x.mean_rate ? y : x;
}

void require_tau(double tau, const char* where) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument(std::string(where) + ": tau must be in [0, 1]");
}

std::vector<double> power_grid(double p_max, const RateSearchOptions& opts) {
  if (!(p_max > 0.0)) throw std::invalid_argument("relay power grid: maximum power must be > 0");
  if (opts.power_points_per_decade < 1 || opts.power_decades < 1) {
    throw std::invalid_argument("relay power grid: need >= 1 point per decade and >= 1 decade");
  }
  const std::size_t ppd = opts.power_points_per_decade;
  const std::size_t last = ppd * static_cast<std::size_t>(opts.power_decades);
  std::vector<double> grid(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const double exponent = -static_cast<double>(last - k) / static_cast<double>(ppd);
    grid[k] = p_max * std::pow(10.0, exponent);
  }
  return grid;
}

// One-way FD relaying src -> relay -> dst. Scores every (r, P_R) candidate
// on the same channel draws and keeps the best min(R_in, R_out).
struct RelayFdResult {
  RateEstimate in;
  RateEstimate out;
  int r = 0;
  double power = 0.0;
  double sinr_in = 0.0;
  double sinr_out = 0.0;
};

struct RelayLinks {
  int n_src;
  int n_relay;
  int n_dst;
  const LinkBudget& src;
  const LinkBudget& relay;
  const LinkBudget& dst;
  Link in;
  Link out;
};

RelayFdResult relay_fd_search(const RelayLinks& L, DuplexMode mode, const SiParams& si,
                              const std::vector<int>& splits, const std::vector<double>& powers,
                              const McConfig& cfg) {
  if (!is_full_duplex(mode)) throw std::invalid_argument("FD relay search: mode must be full duplex");
  if (L.n_relay < 2) throw FdSplitOutOfRange("FD relay search: relay needs at least 2 antennas");
  for (int r : splits) antenna_allocation(L.n_relay, mode, r);

  const std::size_t n_p = powers.size();
  std::vector<double> scale_in(n_p);
  std::vector<double> snr_out(n_p);
  for (std::size_t k = 0; k < n_p; ++k) {
    scale_in[k] = sinr(L.src, L.relay.noise_var, residual_si_power(powers[k], si)) / L.n_src;
    snr_out[k] = sinr(LinkBudget{powers[k], L.relay.path_loss, L.relay.noise_var, {}}, L.dst.noise_var, 0.0);
  }
  const int t_max = fd_transmit_antennas(L.n_relay, mode, 1);

  const auto est = monte_carlo(cfg, 2 * splits.size() * n_p, [&](ChunkStreams& streams, std::span<double> out) {
    Eigen::MatrixXcd h_in(L.n_relay, L.n_src);
    Eigen::MatrixXcd h_out(L.n_dst, t_max);
    fill_channel(h_in, streams(L.in));
    fill_channel(h_out, streams(L.out));
    for (std::size_t i = 0; i < splits.size(); ++i) {
      const int r = splits[i];
      const int t = fd_transmit_antennas(L.n_relay, mode, r);
      const Eigen::VectorXd eig_in = gram_eigenvalues(h_in.topRows(r));
      const Eigen::VectorXd eig_out = gram_eigenvalues(h_out.leftCols(t));
      for (std::size_t k = 0; k < n_p; ++k) {
        const std::size_t slot = 2 * (i * n_p + k);
        out[slot] = rate_from_eigenvalues(eig_in, scale_in[k]);
        out[slot + 1] = rate_from_eigenvalues(eig_out, snr_out[k] / t);
      }
    }
  });

  RelayFdResult best;
  double best_value = -1.0;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    for (std::size_t k = 0; k < n_p; ++k) {
      const std::size_t slot = 2 * (i * n_p + k);
      const double v = std::min(est[slot].mean_rate, est[slot + 1].mean_rate);
      if (v > best_value || (v == best_value && powers[k] > best.power)) {
        best_value = v;
        best = {est[slot], est[slot + 1], splits[i], powers[k], scale_in[k] * L.n_src, snr_out[k]};
      }
    }
  }
  return best;
}

std::vector<int> all_splits(int n_relay) {
  std::vector<int> v;
  for (int r = 1; r <= n_relay - 1; ++r) v.push_back(r);
  return v;
}

double relay_power_cap(const LinkBudget& relay) {
  if (!relay.max_relay_power) {
    throw std::invalid_argument("FD relaying: relay budget needs max_relay_power");
  }
  return *relay.max_relay_power;
}

}  // namespace

ScenarioRates twoway_hd_rates(const TwoWay& net, const TwoWayBudgets& budgets, double tau,
                              const McConfig& cfg) {
  validate(net);
  require_tau(tau, "twoway_hd_rates");
  budgets.a.validate();
  budgets.b.validate();
  const double g_ab = sinr(budgets.a, budgets.b.noise_var, 0.0);
  const double g_ba = sinr(budgets.b, budgets.a.noise_var, 0.0);

  ScenarioRates out;
  out.mode = DuplexMode::HalfDuplex;
  out.r_ab = scaled(ergodic_rate(net.n_b, net.n_a, g_ab, cfg, Link::AB), tau);
  out.r_ba = scaled(ergodic_rate(net.n_a, net.n_b, g_ba, cfg, Link::BA), 1.0 - tau);
  out.params_used.tau = tau;
  out.params_used.link_sinr = {{"AB", g_ab}, {"BA", g_ba}};
  return out;
}

ScenarioRates twoway_fd_rates(const TwoWay& net, DuplexMode mode, const TwoWayBudgets& budgets,
                              const SiParams& si, const FdSplits& splits, const McConfig& cfg) {
  validate(net);
  if (!is_full_duplex(mode)) throw std::invalid_argument("twoway_fd_rates: mode must be full duplex");
  budgets.a.validate();
  budgets.b.validate();
  const AntennaSplit sa = antenna_allocation(net.n_a, mode, splits.r_a);
  const AntennaSplit sb = antenna_allocation(net.n_b, mode, splits.r_b);

  const double g_ab = sinr(budgets.a, budgets.b.noise_var, residual_si_power(budgets.b.tx_power, si));
  const double g_ba = sinr(budgets.b, budgets.a.noise_var, residual_si_power(budgets.a.tx_power, si));

  ScenarioRates out;
  out.mode = mode;
  out.r_ab = ergodic_rate(sb.rx, sa.tx, g_ab, cfg, Link::AB);
  out.r_ba = ergodic_rate(sa.rx, sb.tx, g_ba, cfg, Link::BA);
  out.params_used.link_sinr = {{"AB", g_ab}, {"BA", g_ba}};
  return out;
}

ScenarioRates twoway_rates(const TwoWay& net, DuplexMode mode, const TwoWayBudgets& budgets,
                           const SiParams& si, std::variant<double, FdSplits> tau_or_split,
                           const McConfig& cfg) {
  if (mode == DuplexMode::HalfDuplex) {
    if (!std::holds_alternative<double>(tau_or_split)) {
      throw std::invalid_argument("twoway_rates: HD needs a time-sharing fraction");
    }
    return twoway_hd_rates(net, budgets, std::get<double>(tau_or_split), cfg);
  }
  if (!std::holds_alternative<FdSplits>(tau_or_split)) {
    throw std::invalid_argument("twoway_rates: FD needs antenna splits");
  }
  return twoway_fd_rates(net, mode, budgets, si, std::get<FdSplits>(tau_or_split), cfg);
}

ScenarioRates twohop_hd_rate(const TwoHop& net, const RelayBudgets& budgets, std::optional<double> tau,
                             const McConfig& cfg, const RateSearchOptions& opts) {
  validate(net);
  budgets.a.validate();
  budgets.r.validate();
  budgets.b.validate();
  const double g_ar = sinr(budgets.a, budgets.r.noise_var, 0.0);
  const double g_rb = sinr(budgets.r, budgets.b.noise_var, 0.0);
  const RateEstimate c_ar = ergodic_rate(net.n_r, net.n_a, g_ar, cfg, Link::AR);
  const RateEstimate c_rb = ergodic_rate(net.n_b, net.n_r, g_rb, cfg, Link::RB);

  auto end_to_end = [&](double t) { return smaller(scaled(c_ar, t), scaled(c_rb, 1.0 - t)); };

  double best_tau = 0.0;
  if (tau) {
    require_tau(*tau, "twohop_hd_rate");
    best_tau = *tau;
  } else {
    if (opts.tau_points < 2) throw std::invalid_argument("twohop_hd_rate: need >= 2 tau points");
    double best = -1.0;
    for (std::size_t k = 0; k < opts.tau_points; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(opts.tau_points - 1);
      const double v = end_to_end(t).mean_rate;
      if (v > best) {
        best = v;
        best_tau = t;
      }
    }
  }

  ScenarioRates out;
  out.mode = DuplexMode::HalfDuplex;
  out.r_ab = end_to_end(best_tau);
  out.params_used.tau = best_tau;
  out.params_used.relay_power = budgets.r.tx_power;
  out.params_used.link_sinr = {{"AR", g_ar}, {"RB", g_rb}};
  return out;
}

ScenarioRates twohop_fd_rate_at(const TwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                                const SiParams& si, int relay_rx, double relay_power,
                                const McConfig& cfg) {
  validate(net);
  budgets.a.validate();
  budgets.r.validate();
  budgets.b.validate();
  if (!(relay_power >= 0.0)) throw std::invalid_argument("twohop_fd_rate_at: relay power must be >= 0");
  const RelayLinks links{net.n_a, net.n_r, net.n_b, budgets.a, budgets.r, budgets.b, Link::AR, Link::RB};
  const auto res = relay_fd_search(links, mode, si, {relay_rx}, {relay_power}, cfg);

  ScenarioRates out;
  out.mode = mode;
  out.r_ab = smaller(res.in, res.out);
  out.params_used.relay_power = res.power;
  out.params_used.relay_rx = res.r;
  out.params_used.link_sinr = {{"AR", res.sinr_in}, {"RB", res.sinr_out}};
  return out;
}

ScenarioRates twohop_fd_rate(const TwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                             const SiParams& si, const McConfig& cfg, const RateSearchOptions& opts) {
  validate(net);
  budgets.a.validate();
  budgets.r.validate();
  budgets.b.validate();
  const RelayLinks links{net.n_a, net.n_r, net.n_b, budgets.a, budgets.r, budgets.b, Link::AR, Link::RB};
  const auto res = relay_fd_search(links, mode, si, all_splits(net.n_r),
                                   power_grid(relay_power_cap(budgets.r), opts), cfg);

  ScenarioRates out;
  out.mode = mode;
  out.r_ab = smaller(res.in, res.out);
  out.params_used.relay_power = res.power;
  out.params_used.relay_rx = res.r;
  out.params_used.link_sinr = {{"AR", res.sinr_in}, {"RB", res.sinr_out}};
  return out;
}

MacBounds twr_mac_bounds(const TwoWayTwoHop& net, const RelayBudgets& budgets, double tau,
                         const McConfig& cfg) {
  validate(net);
  require_tau(tau, "twr_mac_bounds");
  const double g_ar = sinr(budgets.a, budgets.r.noise_var, 0.0);
  const double g_br = sinr(budgets.b, budgets.r.noise_var, 0.0);
  const int n_a = net.n_a;
  const int n_b = net.n_b;
  const int n_r = net.n_r;

  const auto est = monte_carlo(cfg, 3, [=](ChunkStreams& streams, std::span<double> out) {
    Eigen::MatrixXcd h_ar(n_r, n_a);
    Eigen::MatrixXcd h_br(n_r, n_b);
    fill_channel(h_ar, streams(Link::AR));
    fill_channel(h_br, streams(Link::BR));
    out[0] = instantaneous_rate(h_ar, g_ar);
    out[1] = instantaneous_rate(h_br, g_br);
    const Eigen::MatrixXcd joint = (g_ar / n_a) * (h_ar * h_ar.adjoint()) + (g_br / n_b) * (h_br * h_br.adjoint());
    out[2] = log2det_identity_plus(joint);
  });
  return {scaled(est[0], tau), scaled(est[1], tau), scaled(est[2], tau)};
}

ScenarioRates twr_rates(const TwoWayTwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                        const SiParams& si, double tau, const McConfig& cfg, const RateSearchOptions& opts) {
  validate(net);
  require_tau(tau, "twr_rates");
  budgets.a.validate();
  budgets.r.validate();
  budgets.b.validate();

  ScenarioRates out;
  out.mode = mode;
  out.params_used.tau = tau;

  if (mode == DuplexMode::HalfDuplex) {
    const MacBounds mac = twr_mac_bounds(net, budgets, tau, cfg);
    const double g_ra = sinr(budgets.r, budgets.a.noise_var, 0.0);
    const double g_rb = sinr(budgets.r, budgets.b.noise_var, 0.0);
    const RateEstimate bc_a = scaled(ergodic_rate(net.n_a, net.n_r, g_ra, cfg, Link::RA), 1.0 - tau);
    const RateEstimate bc_b = scaled(ergodic_rate(net.n_b, net.n_r, g_rb, cfg, Link::RB), 1.0 - tau);

    RateEstimate ab = smaller(mac.a, bc_b);
    RateEstimate ba = smaller(mac.b, bc_a);
    const double total = ab.mean_rate + ba.mean_rate;
    if (total > mac.sum.mean_rate && total > 0.0) {
      const double f = mac.sum.mean_rate / total;
      ab = scaled(ab, f);
      ba = scaled(ba, f);
    }
    out.r_ab = ab;
    out.r_ba = ba;
    out.params_used.mac_rate_a = ab.mean_rate;
    out.params_used.mac_rate_b = ba.mean_rate;
    out.params_used.relay_power = budgets.r.tx_power;
    out.params_used.link_sinr = {{"AR", sinr(budgets.a, budgets.r.noise_var, 0.0)},
                                 {"BR", sinr(budgets.b, budgets.r.noise_var, 0.0)},
                                 {"RA", g_ra},
                                 {"RB", g_rb}};
    return out;
  }

  const auto powers = power_grid(relay_power_cap(budgets.r), opts);
  const RelayLinks forward{net.n_a, net.n_r, net.n_b, budgets.a, budgets.r, budgets.b, Link::AR, Link::RB};
  const RelayLinks reverse{net.n_b, net.n_r, net.n_a, budgets.b, budgets.r, budgets.a, Link::BR, Link::RA};
  const auto fwd = relay_fd_search(forward, mode, si, all_splits(net.n_r), powers, cfg);
  const auto rev = relay_fd_search(reverse, mode, si, all_splits(net.n_r), powers, cfg);

  out.r_ab = scaled(smaller(fwd.in, fwd.out), tau);
  out.r_ba = scaled(smaller(rev.in, rev.out), 1.0 - tau);
  out.params_used.relay_power = fwd.power;
  out.params_used.relay_rx = fwd.r;
  out.params_used.relay_power_reverse = rev.power;
  out.params_used.relay_rx_reverse = rev.r;
  out.params_used.link_sinr = {{"AR", fwd.sinr_in}, {"RB", fwd.sinr_out}, {"BR", rev.sinr_in}, {"RA", rev.sinr_out}};
  return out;
}

}  // namespace duplex
