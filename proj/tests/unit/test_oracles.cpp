// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"

TEST(Oracles, SisoQuadratureAgreesWithExpint) {
  for (double snr : {0.01, 0.5, 1.0, 10.0, 100.0, 1e4, 1e6}) {
    EXPECT_NEAR(oracle::siso_rayleigh_rate(snr), oracle::siso_rayleigh_rate_expint(snr), 1e-8) << snr;
  }
  EXPECT_NEAR(oracle::siso_rayleigh_rate(1.0), 0.860347, 1e-6);
  EXPECT_NEAR(oracle::siso_rayleigh_rate(10.0), 2.906515, 1e-6);
  EXPECT_NEAR(oracle::siso_rayleigh_rate(100.0), 5.884048, 1e-6);
}

TEST(Oracles, HdRelayCasesMatchBrute) {
  for (int a = 1; a <= 4; ++a)
    for (int r = 1; r <= 4; ++r)
      for (int b = 1; b <= 4; ++b) {
        const auto rows = oracle::hd_relay_cases(a, r, b);
        ASSERT_FALSE(rows.empty());
        EXPECT_NEAR(rows.front().dof, oracle::hd_relay_brute(a, r, b, 27721), 1e-3);
      }
}

TEST(Oracles, FdRelayBruteKnownValue) {
  EXPECT_NEAR(oracle::fd_relay_brute(4, 8, 4, false, 0.5, 3000), 8.0 / 3.0, 1e-3);
  EXPECT_EQ(oracle::fd_relay_brute(4, 1, 4, false, 0.5, 100), 0.0);
}
