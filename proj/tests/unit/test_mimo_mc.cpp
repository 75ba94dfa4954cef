// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "duplex/errors.hpp"
#include "duplex/mimo_mc.hpp"
#include "oracles.hpp"

using namespace duplex;

TEST(SampleChannel, DeterministicForSeed) {
  Rng a(42), b(42);
  const auto x = sample_channel(1, 1, a);
  const auto y = sample_channel(1, 1, b);
  EXPECT_EQ(x.entries, y.entries);
  EXPECT_EQ(x.n_rx(), 1);
  EXPECT_EQ(sample_channel(3, 2, a).n_tx(), 2);
}

TEST(SampleChannel, UnitVarianceZeroMean) {
  Rng rng(7);
  constexpr int kDraws = 100000;
  double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto h = sample_channel(2, 2, rng);
    const std::complex<double> z = h.entries(1, 0);
    sum_re += z.real();
    sum_im += z.imag();
    sum_sq += std::norm(z);
  }
  EXPECT_NEAR(sum_re / kDraws, 0.0, 0.02);
  EXPECT_NEAR(sum_im / kDraws, 0.0, 0.02);
  EXPECT_NEAR(sum_sq / kDraws, 1.0, 0.02);
}

TEST(InstantaneousRate, Examples) {
  Rng rng(3);
  const auto h = sample_channel(3, 2, rng);
  EXPECT_EQ(instantaneous_rate(h, 0.0), 0.0);
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = std::complex<double>(0.6, 0.8);
  EXPECT_NEAR(instantaneous_rate(one, 3.0), 2.0, 1e-12);
  EXPECT_NEAR(instantaneous_rate(Eigen::MatrixXcd::Identity(2, 2), 2.0), 2.0, 1e-12);
}

TEST(InstantaneousRate, EigenRouteMatchesDeterminant) {
  Rng rng(11);
  for (auto [r, t] : {std::pair{1, 4}, {4, 1}, {3, 3}, {2, 5}, {6, 2}}) {
    const auto h = sample_channel(r, t, rng);
    for (double g : {0.5, 10.0, 1e5}) {
      EXPECT_NEAR(instantaneous_rate(h, g), rate_from_eigenvalues(gram_eigenvalues(h.entries), g / t), 1e-9);
    }
  }
}

TEST(Log2Det, RejectsIndefinite) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = -2.0;
  EXPECT_THROW(log2det_identity_plus(m), NumericalFailure);
}

TEST(ErgodicRate, ZeroSnr) {
  const auto e = ergodic_rate(1, 1, 0.0, McConfig{});
  EXPECT_EQ(e.mean_rate, 0.0);
  EXPECT_EQ(e.std_err, 0.0);
}

TEST(ErgodicRate, SisoMatchesQuadrature) {
  McConfig cfg;
  cfg.n_samples = 1000000;
  const auto e = ergodic_rate(1, 1, 10.0, cfg);
  EXPECT_NEAR(e.mean_rate, oracle::siso_rayleigh_rate(10.0), 3.0 * e.std_err);
  EXPECT_NEAR(e.mean_rate, 2.906, 0.01);
}

TEST(ErgodicRate, MonotoneInSnrWithSharedSeed) {
  McConfig cfg;
  cfg.n_samples = 4000;
  double prev = 0.0;
  for (double g : {0.1, 1.0, 3.0, 10.0, 100.0, 1e4}) {
    const double v = ergodic_rate(2, 3, g, cfg).mean_rate;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(ErgodicRate, IndependentOfThreadCount) {
  McConfig cfg;
  cfg.n_samples = 5000;
  cfg.chunk_size = 128;
  cfg.threads = 1;
  const auto a = ergodic_rate(2, 2, 50.0, cfg);
  cfg.threads = 4;
  const auto b = ergodic_rate(2, 2, 50.0, cfg);
  EXPECT_EQ(a.mean_rate, b.mean_rate);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_EQ(a.n_samples, 5000u);
}

TEST(ErgodicRate, SeedChangesResult) {
  McConfig cfg;
  cfg.n_samples = 2000;
  const auto a = ergodic_rate(2, 2, 50.0, cfg);
  cfg.seed = 2;
  EXPECT_NE(a.mean_rate, ergodic_rate(2, 2, 50.0, cfg).mean_rate);
}

TEST(ErgodicRate, InvalidArguments) {
  EXPECT_THROW(ergodic_rate(0, 1, 1.0, McConfig{}), std::invalid_argument);
  EXPECT_THROW(ergodic_rate(1, 1, -1.0, McConfig{}), std::invalid_argument);
  McConfig bad;
  bad.n_samples = 0;
  EXPECT_THROW(ergodic_rate(1, 1, 1.0, bad), std::invalid_argument);
}

TEST(WorkerCount, EnvironmentCap) {
  ::setenv("DUPLEX_DOF_THREADS", "1", 1);
  EXPECT_EQ(worker_count(8), 1u);
  EXPECT_EQ(worker_count(0), 1u);
  ::unsetenv("DUPLEX_DOF_THREADS");
  EXPECT_EQ(worker_count(3), 3u);
  EXPECT_GE(worker_count(0), 1u);
}

TEST(MonteCarlo, StreamsArePerLink) {
  ChunkStreams s1(5, 0), s2(5, 0);
  const double ab = std::normal_distribution<double>()(s1(Link::AB));
  // Drawing from another link first must not shift the AB stream.
  (void)std::normal_distribution<double>()(s2(Link::RB));
  EXPECT_EQ(std::normal_distribution<double>()(s2(Link::AB)), ab);
  EXPECT_NE(stream_seed(5, 0, Link::AB), stream_seed(5, 1, Link::AB));
  EXPECT_NE(stream_seed(5, 0, Link::AB), stream_seed(5, 0, Link::BA));
}
