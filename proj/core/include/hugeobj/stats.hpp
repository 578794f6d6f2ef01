#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hugeobj {

// Hoeffding 1-delta confidence radius for a mean of n samples in [0,1].
inline double hoeffding_radius(std::uint64_t n, double delta) {
  if (n == 0) throw std::invalid_argument("hoeffding_radius: n = 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hoeffding_radius: delta");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

// Hoeffding sample count for accuracy eps at confidence 1-delta, range-1 values.
inline std::uint64_t hoeffding_samples(double eps, double delta) {
  if (!(eps > 0.0)) throw std::invalid_argument("hoeffding_samples: eps");
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
}

// Upper critical value of the chi-squared distribution (Wilson-Hilferty
// approximation; adequate for the goodness-of-fit checks in the test
// harness, dof >= 3).
inline double chi2_critical(int dof, double level) {
  double z;
  if (level <= 0.011) z = 2.3263478740;       // 0.99 quantile of N(0,1)
  else if (level <= 0.051) z = 1.6448536270;  // 0.95
  else z = 1.2815515655;                      // 0.90
  double k = static_cast<double>(dof);
  double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

// Pearson chi-squared statistic against given expected counts.
inline double chi2_statistic(std::span<const std::uint64_t> observed,
                             std::span<const double> expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi2: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi2: nonpositive expectation");
    double d = static_cast<double>(observed[i]) - expected[i];
    s += d * d / expected[i];
  }
  return s;
}

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("pearson_correlation: bad input");
  double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hugeobj
