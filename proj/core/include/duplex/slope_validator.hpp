// SPDX-License-Identifier: Apache-2.0
//
// Empirical DoF: least-squares slope of an ergodic-rate curve against
// log2 P_A at high SNR.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "duplex/mimo_mc.hpp"

namespace duplex {

struct SlopeEstimate {
  double slope = 0.0;
  double intercept = 0.0;  // bits
  double r_squared = 0.0;
  std::pair<double, double> snr_window;  // dB, low < high
  std::size_t samples_per_point = 0;
};

struct SlopeOptions {
  double min_r_squared = 0.99;  // FitUnstable below this; <= 0 disables the check
  bool adaptive = true;         // grow n_samples until the top point is precise enough
  double target_rel_err = 0.01;
  std::size_t max_samples = 320000;
};

// Rate at transmit power P_A (linear, noise normalized). Coupled powers
// (P_B = P_A^gamma, relay power, ...) are set by the builder itself.
using RateCurveBuilder = std::function<RateEstimate(double p_a, const McConfig& cfg)>;

// Default grid: 40..70 dB in 5 dB steps.
std::vector<double> default_snr_grid_db();

std::vector<double> snr_grid_db(double low_db, double high_db, double step_db);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Fits over the top half of the grid (at least 4 points). Every SNR point
// uses the same seed, so the curve is built on common random numbers.
SlopeEstimate estimate_dof(const RateCurveBuilder& builder, const std::vector<double>& snr_grid_db,
                           const McConfig& cfg, const SlopeOptions& options = {});

}  // namespace duplex
