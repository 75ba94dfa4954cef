// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

namespace oracle {

double siso_rayleigh_rate(double snr) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [snr](double x) { return std::log2(1.0 + snr * x) * std::exp(-x); };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

double siso_rayleigh_rate_expint(double snr) {
  const double x = 1.0 / snr;
  return std::exp(x) * boost::math::expint(1, x) / std::numbers::ln2;
}

std::vector<CaseRow> hd_relay_cases(int n_a, int n_r, int n_b) {
  const double a = n_a, r = n_r, b = n_b;
  std::vector<CaseRow> rows;
  if (n_r <= std::min(n_a, n_b)) rows.push_back({1, 0.5, r / 2.0});
  if (n_r >= std::max(n_a, n_b)) rows.push_back({2, b / (b + a), a * b / (b + a)});
  if (n_a <= n_r && n_r <= n_b) rows.push_back({3, r / (r + a), r * a / (r + a)});
  if (n_b <= n_r && n_r <= n_a) rows.push_back({4, b / (b + r), r * b / (r + b)});
  return rows;
}

double hd_relay_brute(int n_a, int n_r, int n_b, int tau_steps) {
  const double in = std::min(n_a, n_r);
  const double out = std::min(n_r, n_b);
  double best = 0.0;
  for (int k = 0; k <= tau_steps; ++k) {
    const double tau = static_cast<double>(k) / tau_steps;
    best = std::max(best, std::min(tau * in, (1.0 - tau) * out));
  }
  return best;
}

double fd_relay_brute(int n_a, int n_r, int n_b, bool rf_chain, double lambda, int gamma_steps) {
  const double c = 1.0 - lambda;
  double best = 0.0;
  for (int r = 1; r < n_r; ++r) {
    const double t = (rf_chain ? 2.0 : 1.0) * (n_r - r);
    for (int k = 1; k <= gamma_steps; ++k) {
      const double g = static_cast<double>(k) / gamma_steps;
      const double rx = 1.0 - g * c;
      best = std::max(best, std::min({rx * n_a, rx * r, g * t, g * n_b}));
    }
  }
  return best;
}

double twoway_ac_interior_sum_brute(int n_a, int n_b, double lambda, int gamma_nodes) {
  const double c = 1.0 - lambda;
  double best = 0.0;
  for (int r_a = 1; r_a < n_a; ++r_a) {
    for (int r_b = 1; r_b < n_b; ++r_b) {
      const int t_a = n_a - r_a;
      const int t_b = n_b - r_b;
      for (int k = 0; k < gamma_nodes; ++k) {
        // c in (0, 1]: gamma in [c, 1/c]; beyond that one coordinate is 0.
        const double g = std::exp(std::log(c) * (1.0 - 2.0 * k / (gamma_nodes - 1.0)));
        const double d_ab = (1.0 - g * c) * std::min(r_b, t_a);
        const double d_ba = (1.0 - c / g) * std::min(r_a, t_b);
        if (d_ab > 0.0 && d_ba > 0.0) best = std::max(best, d_ab + d_ba);
      }
    }
  }
  return best;
}

}  // namespace oracle
