// SPDX-License-Identifier: Apache-2.0
//
// Residual self-interference model, link SINR and the per-node hardware
// accounting (antennas / RF chains) for half-duplex and full-duplex radios.
#pragma once

#include <optional>
#include <string_view>

namespace duplex {

// Parameters of the residual self-interference power law
//   I = P^(1-lambda) / (beta * mu^lambda).
// lambda = 1 is a fixed noise-floor increase, lambda = 0 makes the residual
// scale linearly with transmit power.
class SiParams {
 public:
  SiParams() = default;
  SiParams(double lambda, double beta = 1.0, double mu = 1.0);

  double lambda() const noexcept { return lambda_; }
  double beta() const noexcept { return beta_; }
  double mu() const noexcept { return mu_; }

 private:
  double lambda_ = 1.0;
  double beta_ = 1.0;
  double mu_ = 1.0;
};

// Transmit-side budget of a node, in noise-normalized linear units.
// noise_var is the receiver noise of the same node when it listens.
struct LinkBudget {
  double tx_power = 0.0;
  double path_loss = 1.0;
  double noise_var = 1.0;
  std::optional<double> max_relay_power;

  // Throws std::invalid_argument on negative power or nonpositive K, sigma^2.
  void validate() const;
};

LinkBudget make_budget(double tx_power, double path_loss = 1.0, double noise_var = 1.0,
                       std::optional<double> max_relay_power = std::nullopt);

enum class DuplexMode { HalfDuplex, AntennaConservedFD, RfChainConservedFD };

constexpr bool is_full_duplex(DuplexMode m) noexcept { return m != DuplexMode::HalfDuplex; }

// Short lowercase tag used by the CLI and output files: "hd", "ac", "rc".
std::string_view mode_tag(DuplexMode m) noexcept;
std::optional<DuplexMode> parse_mode_tag(std::string_view tag) noexcept;

struct AntennaSplit {
  int rx = 0;
  int tx = 0;
  int total_antennas_used = 0;

  friend bool operator==(const AntennaSplit&, const AntennaSplit&) = default;
};

double residual_si_power(double p_tx, const SiParams& si);

// P / (K (sigma^2 + I)) for the transmitter's power and path loss.
double sinr(const LinkBudget& tx, double rx_noise_var, double si_power);

// Hardware split for a node with n_total antennas in HD mode.
//   HD:    rx = tx = N
//   AC FD: tx = N - r,    N antennas in total
//   RC FD: tx = 2N - 2r,  2N RF chains in total (r chains feed analog cancellation)
// Throws FdSplitOutOfRange when an FD split is outside 1 <= r <= N-1.
AntennaSplit antenna_allocation(int n_total, DuplexMode mode, std::optional<int> rx_count = {});

// Transmit antenna count for a valid FD split, without building the struct.
int fd_transmit_antennas(int n_total, DuplexMode mode, int rx_count);

}  // namespace duplex
