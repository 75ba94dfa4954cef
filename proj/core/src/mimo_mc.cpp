// SPDX-License-Identifier: Apache-2.0
#include "duplex/mimo_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "duplex/errors.hpp"

namespace duplex {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Running mean / M2 per output slot, merged with Chan's pairwise update.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

}  // namespace

void McConfig::validate() const {
  if (n_samples < 1) throw std::invalid_argument("McConfig: n_samples must be >= 1");
  if (chunk_size < 1) throw std::invalid_argument("McConfig: chunk_size must be >= 1");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk, Link link) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (chunk + 0x632be59bd9b4e019ULL));
  return splitmix64(h ^ (static_cast<std::uint64_t>(link) + 1) * 0xd6e8feb86659fd93ULL);
}

Rng& ChunkStreams::operator()(Link link) {
  auto& slot = streams_[static_cast<std::size_t>(link)];
  if (!slot) slot.emplace(stream_seed(seed_, chunk_, link));
  return *slot;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* env = std::getenv("DUPLEX_DOF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

void fill_channel(Eigen::Ref<Eigen::MatrixXcd> h, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      h(r, c) = {re, im};
    }
  }
}

ChannelSample sample_channel(int n_rx, int n_tx, Rng& rng) {
  if (n_rx < 1 || n_tx < 1) throw std::invalid_argument("sample_channel: antenna counts must be >= 1");
  ChannelSample s{Eigen::MatrixXcd(n_rx, n_tx)};
  fill_channel(s.entries, rng);
  return s;
}

double log2det_identity_plus(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd a = m;
  a.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("log2det_identity_plus: I + M is not positive definite");
  }
  const auto diag = llt.matrixLLT().diagonal().real().array();
  if ((diag <= 0.0).any()) throw NumericalFailure("log2det_identity_plus: non-positive pivot");
  return 2.0 * diag.log().sum() / std::numbers::ln2;
}

double instantaneous_rate(const Eigen::MatrixXcd& h, double gamma_sinr) {
  if (!(gamma_sinr >= 0.0)) throw std::invalid_argument("instantaneous_rate: gamma_sinr must be >= 0");
  if (gamma_sinr == 0.0 || h.size() == 0) return 0.0;
  const double scale = gamma_sinr / static_cast<double>(h.cols());
  // det(I + c HH^*) = det(I + c H^*H); factor the smaller one.
  if (h.rows() <= h.cols()) return log2det_identity_plus(scale * (h * h.adjoint()));
  return log2det_identity_plus(scale * (h.adjoint() * h));
}

double instantaneous_rate(const ChannelSample& h, double gamma_sinr) {
  return instantaneous_rate(h.entries, gamma_sinr);
}

Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd g = h.rows() <= h.cols() ? Eigen::MatrixXcd(h * h.adjoint())
                                                  : Eigen::MatrixXcd(h.adjoint() * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("gram_eigenvalues: eigen solver failed");
  return es.eigenvalues().cwiseMax(0.0);
}

double rate_from_eigenvalues(const Eigen::VectorXd& eigenvalues, double scale) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) acc += std::log1p(scale * eigenvalues[i]);
  return acc / std::numbers::ln2;
}

std::vector<RateEstimate> monte_carlo(const McConfig& cfg, std::size_t n_outputs,
                                      const SampleKernel& kernel) {
  cfg.validate();
  const std::size_t n_chunks = (cfg.n_samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<std::vector<Moments>> per_chunk(n_chunks, std::vector<Moments>(n_outputs));

  auto run_chunk = [&](std::size_t c) {
    ChunkStreams streams(cfg.seed, c);
    std::vector<double> out(n_outputs);
    auto& acc = per_chunk[c];
    const std::size_t begin = c * cfg.chunk_size;
    const std::size_t end = std::min(cfg.n_samples, begin + cfg.chunk_size);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(out.begin(), out.end(), 0.0);
      kernel(streams, out);
      for (std::size_t k = 0; k < n_outputs; ++k) acc[k].push(out[k]);
    }
  };

  const unsigned workers = std::min<std::size_t>(worker_count(cfg.threads), n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n_chunks;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<Moments> total(n_outputs);
  for (const auto& chunk : per_chunk) {
    for (std::size_t k = 0; k < n_outputs; ++k) total[k].merge(chunk[k]);
  }

  std::vector<RateEstimate> result(n_outputs);
  for (std::size_t k = 0; k < n_outputs; ++k) {
    const auto& m = total[k];
    const double var = m.n > 1.0 ? m.m2 / (m.n - 1.0) : 0.0;
    result[k].mean_rate = m.mean;
    result[k].std_err = std::sqrt(std::max(0.0, var) / m.n);
    result[k].n_samples = cfg.n_samples;
  }
  return result;
}

RateEstimate ergodic_rate(int n_rx, int n_tx, double gamma_sinr, const McConfig& cfg, Link link) {
  if (n_rx < 1 || n_tx < 1) throw std::invalid_argument("ergodic_rate: antenna counts must be >= 1");
  if (!(gamma_sinr >= 0.0)) throw std::invalid_argument("ergodic_rate: gamma_sinr must be >= 0");
  cfg.validate();
  if (gamma_sinr == 0.0) return {0.0, 0.0, cfg.n_samples};

  const auto est = monte_carlo(cfg, 1, [=](ChunkStreams& streams, std::span<double> out) {
    Eigen::MatrixXcd h(n_rx, n_tx);
    fill_channel(h, streams(link));
    out[0] = instantaneous_rate(h, gamma_sinr);
  });
  return est.front();
}

}  // namespace duplex
