// SPDX-License-Identifier: Apache-2.0
//
// Scenario-level ergodic rates for the two-way, two-hop and two-way two-hop
// channels in HD and FD operation.
//
// Every link draws its channels from its own stream (see Link), so two
// computations that share a link and a McConfig see the same matrices.
// Parameter searches (tau, relay split r, relay power) are evaluated on
// common random numbers: all candidates are scored on the same draws.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "duplex/core_model.hpp"
#include "duplex/dof_types.hpp"
#include "duplex/mimo_mc.hpp"

namespace duplex {

struct TwoWayBudgets {
  LinkBudget a;
  LinkBudget b;
};

struct RelayBudgets {
  LinkBudget a;
  LinkBudget r;  // max_relay_power bounds the FD relay power search
  LinkBudget b;
};

struct FdSplits {
  int r_a = 1;
  int r_b = 1;
};

struct OperatingPoint {
  std::optional<double> tau;
  std::optional<double> relay_power;          // A -> B direction
  std::optional<int> relay_rx;                // r, A -> B direction
  std::optional<double> relay_power_reverse;  // B -> A phase of two-way relaying
  std::optional<int> relay_rx_reverse;
  std::optional<double> mac_rate_a;           // MAC operating point of HD two-way relaying
  std::optional<double> mac_rate_b;
  std::map<std::string, double> link_sinr;    // "AB", "AR", ...
};

struct ScenarioRates {
  RateEstimate r_ab;
  std::optional<RateEstimate> r_ba;  // absent for one-way relaying
  OperatingPoint params_used;
  DuplexMode mode = DuplexMode::HalfDuplex;
};

struct RateSearchOptions {
  std::size_t tau_points = 201;
  std::size_t power_points_per_decade = 61;
  int power_decades = 6;  // relay power grid spans [P_max 10^-decades, P_max]
};

// ---- two-way --------------------------------------------------------------

ScenarioRates twoway_hd_rates(const TwoWay& net, const TwoWayBudgets& budgets, double tau,
                              const McConfig& cfg);

// Both nodes FD; each receiver sees residual SI of its own transmit power.
ScenarioRates twoway_fd_rates(const TwoWay& net, DuplexMode mode, const TwoWayBudgets& budgets,
                              const SiParams& si, const FdSplits& splits, const McConfig& cfg);

ScenarioRates twoway_rates(const TwoWay& net, DuplexMode mode, const TwoWayBudgets& budgets,
                           const SiParams& si, std::variant<double, FdSplits> tau_or_split,
                           const McConfig& cfg);

// ---- two-hop --------------------------------------------------------------

// min(tau R_AR, (1 - tau) R_RB); tau maximized on a grid when not given.
ScenarioRates twohop_hd_rate(const TwoHop& net, const RelayBudgets& budgets, std::optional<double> tau,
                             const McConfig& cfg, const RateSearchOptions& opts = {});

// FD relay at a fixed receive split r and relay power.
ScenarioRates twohop_fd_rate_at(const TwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                                const SiParams& si, int relay_rx, double relay_power,
                                const McConfig& cfg);

// FD relay maximizing min(R_AR, R_RB) over r in 1..N_R-1 and a log-spaced
// relay power grid ending at budgets.r.max_relay_power. Among equal scores
// the larger relay power wins.
ScenarioRates twohop_fd_rate(const TwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                             const SiParams& si, const McConfig& cfg, const RateSearchOptions& opts = {});

// ---- two-way two-hop ------------------------------------------------------

// HD: MAC phase (fraction tau) then BC phase. The end-to-end pair is capped
// by the BC rates and, if it violates the MAC sum-rate bound, scaled down
// along its own direction onto that bound.
// FD: tau min(R_AR, R_RB) and (1 - tau) min(R_BR, R_RA); each phase picks
// its own relay split and power.
ScenarioRates twr_rates(const TwoWayTwoHop& net, DuplexMode mode, const RelayBudgets& budgets,
                        const SiParams& si, double tau, const McConfig& cfg,
                        const RateSearchOptions& opts = {});

// The three HD MAC-phase bounds (already multiplied by tau).
struct MacBounds {
  RateEstimate a;
  RateEstimate b;
  RateEstimate sum;
};

MacBounds twr_mac_bounds(const TwoWayTwoHop& net, const RelayBudgets& budgets, double tau,
                         const McConfig& cfg);

}  // namespace duplex
