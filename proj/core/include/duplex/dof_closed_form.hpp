// SPDX-License-Identifier: Apache-2.0
//
// Closed-form DoF expressions and trade-off regions for the two-way,
// two-hop (relay) and two-way two-hop channels, under HD and the two FD
// hardware budgets, plus the HD/FD crossover conditions.
//
// Power coupling: the second transmitter's power scales as P^gamma where P
// is the first transmitter's power. In relay scenarios gamma is in (0, 1].
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duplex/core_model.hpp"
#include "duplex/dof_search.hpp"
#include "duplex/dof_types.hpp"

namespace duplex {

// ---- two-way channel ------------------------------------------------------

// HD time sharing: d_ab + d_ba <= min(N_A, N_B).
DofRegion twoway_hd_region(int n_a, int n_b);
DofPoint twoway_hd_point(int n_a, int n_b, double tau);

// d_ab = [1 - gamma(1-lambda)]^+ min(r_B, t_A)
// d_ba = [1 - (1-lambda)/gamma]^+ min(r_A, t_B)
// Splits must match antenna_allocation for (n, mode); FdSplitOutOfRange otherwise.
DofPoint twoway_fd_point(int n_a, int n_b, DuplexMode mode, const AntennaSplit& split_a,
                         const AntennaSplit& split_b, PowerCoupling coupling, const SiParams& si);

// gamma values swept for the two-way FD region: `steps - 1` uniform nodes of
// (0, 1], their reciprocals, and the analytic break points of the brackets.
std::vector<double> twoway_gamma_values(const SiParams& si, std::size_t steps = 2001);

// Every twoway_fd_point over admissible splits and the gamma sweep.
std::vector<DofPoint> twoway_fd_generators(int n_a, int n_b, DuplexMode mode, const SiParams& si,
                                           std::size_t gamma_steps = 2001);

// Convex hull of the generators plus the one-node-silent axis points.
DofRegion twoway_fd_region(int n_a, int n_b, DuplexMode mode, const SiParams& si,
                           std::size_t gamma_steps = 2001);

struct Prop1Result {
  bool strictly_inside = false;    // max interior sum < min(N_A, N_B)
  double max_interior_sum = 0.0;   // over generators with both DoFs > 0
  double bound = 0.0;              // (1 - (1-lambda)^2) min(N_A, N_B)
};

// AC FD sum-DoF check; requires lambda < 1 (std::invalid_argument otherwise).
Prop1Result prop1_check(int n_a, int n_b, const SiParams& si);

// RC FD point at gamma = 1, r_X = floor(2 N_X / 3), returned only when its
// coordinate sum beats min(N_A, N_B).
std::optional<DofPoint> prop2_witness(int n_a, int n_b, const SiParams& si);

// Smallest lambda above which that construction beats HD, evaluated from the
// construction itself; nullopt when the construction has no valid split or
// cannot beat HD even at lambda = 1.
std::optional<double> prop2_threshold(int n_a, int n_b);

// ---- two-hop relay channel ------------------------------------------------

struct HdRelayDof {
  double tau_opt = 0.5;
  double dof = 0.0;
};

// Four-case table: relay size against min/max of the end antenna counts.
HdRelayDof twohop_hd_dof(int n_a, int n_r, int n_b);

struct FdRelayDof {
  double dof = 0.0;
  int r_opt = 0;         // 0 when the relay cannot split (N_R < 2)
  int t_opt = 0;
  double gamma_opt = 0.0;
};

// max over r in 1..N_R-1, gamma in (0,1] of
//   min((1-gamma(1-lambda)) N_A, (1-gamma(1-lambda)) r, gamma t, gamma N_B),
// solved exactly in gamma for each r.
FdRelayDof twohop_fd_dof(int n_a, int n_r, int n_b, DuplexMode mode, const SiParams& si);

// Symmetric-case expressions (N_A = N_B = N):
//   AC: min(N, N_R/2) / (2 - lambda),  RC: min(N, floor(2 N_R / 3)) / (2 - lambda).
// Always achievable. They equal twohop_fd_dof when the end nodes limit the
// relay (N <= N_R/2 for AC, N <= floor(2N_R/3) for RC), at lambda = 1, and
// for AC with even N_R at lambda = 0; otherwise an unbalanced split can do
// better.
double twohop_fd_symmetric_dof(int n, int n_r, DuplexMode mode, const SiParams& si);

// Single-antenna source (N_A = 1): m / (m + 1 - lambda), m = min(t(r=1), N_B),
// where t(r=1) is N_R - 1 for AC and 2N_R - 2 for RC. Zero when N_R < 2.
double twohop_fd_single_antenna_source_dof(int n_r, int n_b, DuplexMode mode, const SiParams& si);

struct Crossover {
  double threshold = 0.0;               // N(2-lambda), or (3/4)N(2-lambda) for RC
  std::optional<int> rule_n_r;          // smallest even (AC) / multiple of 3 (RC) N_R above it
  std::optional<int> closed_form_n_r;   // first N_R where the symmetric expression beats HD
  std::optional<int> exact_n_r;         // first N_R where twohop_fd_dof beats HD
  std::string condition;
};

// Symmetric two-hop crossover for N antennas at both ends. N_R is searched
// up to search_limit; lambda = 0 never crosses.
Crossover twohop_crossover(int n, DuplexMode mode, const SiParams& si, int search_limit = 256);

// Single-antenna source: FD beats HD iff lambda > 0 and N_R > min(N_B, 1/lambda).
bool asym_crossover(int n_b, int n_r, const SiParams& si);

// ---- two-way two-hop channel ----------------------------------------------

struct TwrHdRegions {
  DofRegion upper_bound;  // box d <= min(N/2, N_R/2)
  DofRegion mac_bc;       // box with d_ab + d_ba <= min(N, N_R/2)
};

TwrHdRegions twr_hd_regions(int n, int n_r);

struct TwrFdRegion {
  DofRegion region;
  double d_ab = 0.0;  // one-way FD relay DoF A -> B
  double d_ba = 0.0;  // one-way FD relay DoF B -> A
};

// Time sharing between the two one-way FD relay phases.
TwrFdRegion twr_fd_region(int n_a, int n_r, int n_b, DuplexMode mode, const SiParams& si);

}  // namespace duplex
