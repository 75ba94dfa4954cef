// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "duplex/core_model.hpp"
#include "duplex/errors.hpp"

using namespace duplex;

TEST(SiParams, ValidatesRanges) {
  EXPECT_NO_THROW(SiParams(0.0));
  EXPECT_NO_THROW(SiParams(1.0, 3.0, 0.5));
  EXPECT_THROW(SiParams(-0.01), std::invalid_argument);
  EXPECT_THROW(SiParams(1.01), std::invalid_argument);
  EXPECT_THROW(SiParams(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(SiParams(0.5, 1.0, -1.0), std::invalid_argument);
  const SiParams def;
  EXPECT_EQ(def.lambda(), 1.0);
  EXPECT_EQ(def.beta(), 1.0);
  EXPECT_EQ(def.mu(), 1.0);
}

TEST(ResidualSi, Examples) {
  EXPECT_DOUBLE_EQ(residual_si_power(100.0, SiParams(1.0, 2.0, 5.0)), 0.1);
  EXPECT_DOUBLE_EQ(residual_si_power(100.0, SiParams(0.0, 1.0, 7.0)), 100.0);
  EXPECT_NEAR(residual_si_power(1e4, SiParams(0.5, 10.0, 10.0)), 3.16227766, 1e-6);
}

TEST(ResidualSi, ZeroPowerAtUnitLambdaKeepsFloor) {
  EXPECT_DOUBLE_EQ(residual_si_power(0.0, SiParams(1.0, 2.0, 3.0)), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(residual_si_power(0.0, SiParams(0.5)), 0.0);
  EXPECT_THROW(residual_si_power(-1.0, SiParams(0.5)), std::invalid_argument);
}

TEST(ResidualSi, SublinearAndIncreasing) {
  for (double lambda : {0.1, 0.3, 0.5, 0.8, 0.95}) {
    const SiParams si(lambda, 1.7, 2.3);
    for (double p : {0.01, 1.0, 10.0, 1e3, 1e6}) {
      EXPECT_LT(residual_si_power(p, si), residual_si_power(1.5 * p, si));
      for (double c : {1.01, 2.0, 100.0}) EXPECT_LT(residual_si_power(c * p, si), c * residual_si_power(p, si));
    }
  }
}

TEST(ResidualSi, ConstantAtUnitLambda) {
  const SiParams si(1.0, 4.0, 2.0);
  for (double p : {1e-3, 1.0, 1e9}) EXPECT_DOUBLE_EQ(residual_si_power(p, si), residual_si_power(1.0, si));
}

TEST(Sinr, Examples) {
  EXPECT_DOUBLE_EQ(sinr(make_budget(10.0), 1.0, 0.0), 10.0);
  EXPECT_DOUBLE_EQ(sinr(make_budget(10.0, 2.0), 1.0, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(sinr(make_budget(100.0), 1.0, residual_si_power(100.0, SiParams(1.0))), 50.0);
}

TEST(Sinr, Monotone) {
  const double base = sinr(make_budget(10.0, 2.0), 1.5, 0.5);
  EXPECT_GT(sinr(make_budget(11.0, 2.0), 1.5, 0.5), base);
  EXPECT_LT(sinr(make_budget(10.0, 2.5), 1.5, 0.5), base);
  EXPECT_LT(sinr(make_budget(10.0, 2.0), 2.0, 0.5), base);
  EXPECT_LT(sinr(make_budget(10.0, 2.0), 1.5, 0.7), base);
  EXPECT_THROW(sinr(make_budget(1.0), 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(sinr(make_budget(1.0), 1.0, -1.0), std::invalid_argument);
}

TEST(LinkBudget, Validation) {
  EXPECT_THROW(make_budget(-1.0), std::invalid_argument);
  EXPECT_THROW(make_budget(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_budget(1.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_budget(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(make_budget(0.0, 1.0, 1.0, 5.0));
}

TEST(AntennaAllocation, Examples) {
  EXPECT_EQ(antenna_allocation(2, DuplexMode::HalfDuplex), (AntennaSplit{2, 2, 2}));
  EXPECT_EQ(antenna_allocation(2, DuplexMode::AntennaConservedFD, 1), (AntennaSplit{1, 1, 2}));
  EXPECT_EQ(antenna_allocation(2, DuplexMode::RfChainConservedFD, 1), (AntennaSplit{1, 2, 3}));
}

TEST(AntennaAllocation, ConservationLaws) {
  for (int n = 2; n <= 12; ++n) {
    for (int r = 1; r < n; ++r) {
      const auto ac = antenna_allocation(n, DuplexMode::AntennaConservedFD, r);
      EXPECT_EQ(ac.rx + ac.tx, n);
      EXPECT_EQ(ac.total_antennas_used, n);
      const auto rc = antenna_allocation(n, DuplexMode::RfChainConservedFD, r);
      EXPECT_EQ(2 * rc.rx + rc.tx, 2 * n);
      EXPECT_EQ(rc.total_antennas_used, 2 * n - r);
      EXPECT_EQ(fd_transmit_antennas(n, DuplexMode::RfChainConservedFD, r), rc.tx);
    }
  }
}

TEST(AntennaAllocation, OutOfRange) {
  EXPECT_THROW(antenna_allocation(1, DuplexMode::AntennaConservedFD, 1), FdSplitOutOfRange);
  EXPECT_THROW(antenna_allocation(4, DuplexMode::AntennaConservedFD, 0), FdSplitOutOfRange);
  EXPECT_THROW(antenna_allocation(4, DuplexMode::RfChainConservedFD, 4), FdSplitOutOfRange);
  EXPECT_THROW(antenna_allocation(4, DuplexMode::RfChainConservedFD), FdSplitOutOfRange);
  EXPECT_THROW(antenna_allocation(0, DuplexMode::HalfDuplex), std::invalid_argument);
}

TEST(DuplexMode, Tags) {
  for (auto m : {DuplexMode::HalfDuplex, DuplexMode::AntennaConservedFD, DuplexMode::RfChainConservedFD}) {
    EXPECT_EQ(parse_mode_tag(mode_tag(m)), m);
  }
  EXPECT_FALSE(parse_mode_tag("fd").has_value());
  EXPECT_FALSE(is_full_duplex(DuplexMode::HalfDuplex));
  EXPECT_TRUE(is_full_duplex(DuplexMode::RfChainConservedFD));
}
