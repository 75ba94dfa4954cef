// SPDX-License-Identifier: Apache-2.0
#include "duplex/slope_validator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "duplex/errors.hpp"

namespace duplex {

std::vector<double> default_snr_grid_db() { return snr_grid_db(40.0, 70.0, 5.0); }

std::vector<double> snr_grid_db(double low_db, double high_db, double step_db) {
  if (!(step_db > 0.0) || !(high_db > low_db)) {
    throw std::invalid_argument("snr_grid_db: need low < high and step > 0");
  }
  const auto n = static_cast<std::size_t>(std::floor((high_db - low_db) / step_db + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) grid[k] = low_db + step_db * static_cast<double>(k);
  return grid;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares: need two equally sized series of >= 2 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("least_squares: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

SlopeEstimate estimate_dof(const RateCurveBuilder& builder, const std::vector<double>& grid,
                           const McConfig& cfg, const SlopeOptions& options) {
  if (!builder) throw std::invalid_argument("estimate_dof: empty rate builder");
  if (grid.size() < 4) throw std::invalid_argument("estimate_dof: need at least 4 SNR points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("estimate_dof: SNR grid must be strictly increasing");
  }
  cfg.validate();

  const std::size_t n_fit = std::max<std::size_t>(4, (grid.size() + 1) / 2);
  const std::size_t first = grid.size() - n_fit;

  McConfig run = cfg;
  if (options.adaptive) {
    const double p_top = db_to_linear(grid.back());
    for (;;) {
      const RateEstimate top = builder(p_top, run);
      const bool precise = top.mean_rate <= 0.0 || top.std_err < options.target_rel_err * top.mean_rate;
      if (precise || run.n_samples * 2 > options.max_samples) break;
      run.n_samples *= 2;
    }
  }

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = first; i < grid.size(); ++i) {
    x.push_back(grid[i] / 10.0 * std::numbers::log2e / std::numbers::log10e);
    y.push_back(builder(db_to_linear(grid[i]), run).mean_rate);
  }
  const LinearFit fit = least_squares(x, y);

  SlopeEstimate est{fit.slope, fit.intercept, fit.r_squared, {grid[first], grid.back()}, run.n_samples};
  if (options.min_r_squared > 0.0 && fit.r_squared < options.min_r_squared) {
    throw FitUnstable("estimate_dof: r_squared " + std::to_string(fit.r_squared) + " below " +
                          std::to_string(options.min_r_squared),
                      fit.r_squared);
  }
  return est;
}

}  // namespace duplex
