// SPDX-License-Identifier: Apache-2.0
//
// Rayleigh MIMO channel sampling and Monte-Carlo ergodic rates
//   E[ log2 det(I + (snr / n_tx) H H^*) ].
//
// Sampling is split into fixed-size chunks. Every chunk owns one RNG stream
// per link, seeded from (seed, chunk index, link), and chunk statistics are
// merged in chunk order, so results are bit-identical for any thread count.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace duplex {

using Rng = std::mt19937_64;

struct ChannelSample {
  Eigen::MatrixXcd entries;  // n_rx x n_tx

  int n_rx() const noexcept { return static_cast<int>(entries.rows()); }
  int n_tx() const noexcept { return static_cast<int>(entries.cols()); }
};

struct McConfig {
  std::size_t n_samples = 20000;
  std::uint64_t seed = 1;
  std::size_t chunk_size = 1024;
  // 0 picks hardware concurrency. Either way DUPLEX_DOF_THREADS caps the count.
  unsigned threads = 0;

  void validate() const;
};

struct RateEstimate {
  double mean_rate = 0.0;  // bits per channel use
  double std_err = 0.0;
  std::size_t n_samples = 0;
};

// Independent channel links. Each gets its own RNG stream inside a chunk so
// that the same link draws the same matrices in every scenario that uses it.
enum class Link : std::uint8_t { Generic, AB, BA, AR, RA, RB, BR };
inline constexpr std::size_t kLinkCount = 7;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk, Link link) noexcept;

class ChunkStreams {
 public:
  ChunkStreams(std::uint64_t seed, std::uint64_t chunk) : seed_(seed), chunk_(chunk) {}

  Rng& operator()(Link link);

 private:
  std::uint64_t seed_;
  std::uint64_t chunk_;
  std::array<std::optional<Rng>, kLinkCount> streams_;
};

// Number of worker threads for a request (0 = automatic), capped by
// DUPLEX_DOF_THREADS.
unsigned worker_count(unsigned requested = 0);

// Entries are CN(0, 1): real and imaginary parts each N(0, 1/2).
ChannelSample sample_channel(int n_rx, int n_tx, Rng& rng);
void fill_channel(Eigen::Ref<Eigen::MatrixXcd> h, Rng& rng);

// log2 det(I + M) for Hermitian PSD M, by Cholesky. Throws NumericalFailure.
double log2det_identity_plus(const Eigen::MatrixXcd& m);

// log2 det(I + (snr / n_tx) H H^*).
double instantaneous_rate(const ChannelSample& h, double gamma_sinr);
double instantaneous_rate(const Eigen::MatrixXcd& h, double gamma_sinr);

// Eigenvalues of the smaller Gram matrix of H (HH^* or H^*H), clamped >= 0.
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& h);

// sum_i log2(1 + scale * eig_i); scale is snr / n_tx.
double rate_from_eigenvalues(const Eigen::VectorXd& eigenvalues, double scale);

// Per-sample kernel: draws what it needs from the chunk streams and writes
// one value per output slot. Called concurrently from several threads.
using SampleKernel = std::function<void(ChunkStreams&, std::span<double>)>;

std::vector<RateEstimate> monte_carlo(const McConfig& cfg, std::size_t n_outputs,
                                      const SampleKernel& kernel);

RateEstimate ergodic_rate(int n_rx, int n_tx, double gamma_sinr, const McConfig& cfg,
                          Link link = Link::Generic);

}  // namespace duplex
