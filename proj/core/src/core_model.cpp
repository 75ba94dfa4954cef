// SPDX-License-Identifier: Apache-2.0
#include "duplex/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "duplex/errors.hpp"

namespace duplex {

SiParams::SiParams(double lambda, double beta, double mu) : lambda_(lambda), beta_(beta), mu_(mu) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("SiParams: lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("SiParams: beta must be positive and finite");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("SiParams: mu must be positive and finite");
  }
}

void LinkBudget::validate() const {
  if (!(tx_power >= 0.0) || !std::isfinite(tx_power)) {
    throw std::invalid_argument("LinkBudget: tx_power must be finite and >= 0");
  }
  if (!(path_loss > 0.0) || !std::isfinite(path_loss)) {
    throw std::invalid_argument("LinkBudget: path_loss must be finite and > 0");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("LinkBudget: noise_var must be finite and > 0");
  }
  if (max_relay_power && !(*max_relay_power > 0.0)) {
    throw std::invalid_argument("LinkBudget: max_relay_power must be > 0 when present");
  }
}

LinkBudget make_budget(double tx_power, double path_loss, double noise_var,
                       std::optional<double> max_relay_power) {
  LinkBudget b{tx_power, path_loss, noise_var, max_relay_power};
  b.validate();
  return b;
}

std::string_view mode_tag(DuplexMode m) noexcept {
  switch (m) {
    case DuplexMode::HalfDuplex: return "hd";
    case DuplexMode::AntennaConservedFD: return "ac";
    case DuplexMode::RfChainConservedFD: return "rc";
  }
  return "hd";
}

std::optional<DuplexMode> parse_mode_tag(std::string_view tag) noexcept {
  if (tag == "hd") return DuplexMode::HalfDuplex;
  if (tag == "ac") return DuplexMode::AntennaConservedFD;
  if (tag == "rc") return DuplexMode::RfChainConservedFD;
  return std::nullopt;
}

double residual_si_power(double p_tx, const SiParams& si) {
  if (!(p_tx >= 0.0)) throw std::invalid_argument("residual_si_power: p_tx must be >= 0");
  // std::pow(0, 0) == 1 keeps the lambda = 1 floor at p_tx = 0.
  return std::pow(p_tx, 1.0 - si.lambda()) / (si.beta() * std::pow(si.mu(), si.lambda()));
}

double sinr(const LinkBudget& tx, double rx_noise_var, double si_power) {
  if (!(rx_noise_var > 0.0)) throw std::invalid_argument("sinr: rx_noise_var must be > 0");
  if (!(si_power >= 0.0)) throw std::invalid_argument("sinr: si_power must be >= 0");
  if (!(tx.path_loss > 0.0)) throw std::invalid_argument("sinr: path_loss must be > 0");
  return tx.tx_power / (tx.path_loss * (rx_noise_var + si_power));
}

int fd_transmit_antennas(int n_total, DuplexMode mode, int rx_count) {
  if (mode == DuplexMode::AntennaConservedFD) return n_total - rx_count;
  return 2 * n_total - 2 * rx_count;
}

AntennaSplit antenna_allocation(int n_total, DuplexMode mode, std::optional<int> rx_count) {
  if (n_total < 1) throw std::invalid_argument("antenna_allocation: N must be >= 1");
  if (mode == DuplexMode::HalfDuplex) return {n_total, n_total, n_total};

  if (!rx_count) throw FdSplitOutOfRange("antenna_allocation: FD mode needs a receive antenna count");
  const int r = *rx_count;
  if (r < 1 || r > n_total - 1) {
    throw FdSplitOutOfRange("antenna_allocation: FD split r=" + std::to_string(r) +
                            " outside [1, " + std::to_string(n_total - 1) + "]");
  }
  const int t = fd_transmit_antennas(n_total, mode, r);
  const int total = mode == DuplexMode::AntennaConservedFD ? n_total : 2 * n_total - r;
  return {r, t, total};
}

}  // namespace duplex
