#pragma once

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <span>
#include <vector>
#include <utility>

namespace qgec::stats {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ95OneSided = 1.6448536269514722;

struct Interval {
  double low = 0;
  double high = 0;
};

/// Wilson score interval for k successes out of n.
inline Interval wilson(std::uint64_t k, std::uint64_t n, double z = kZ95) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

struct TrendTest {
  long long s = 0;       // Mann-Kendall statistic
  double variance = 0;   // tie-corrected
  double z = 0;          // continuity-corrected normal score
};

/// Mann-Kendall trend statistic over a sequence ordered by the covariate.
inline TrendTest mann_kendall(std::span<const double> xs) {
  TrendTest t;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (xs[j] > xs[i]) ++t.s;
      if (xs[j] < xs[i]) --t.s;
    }
  }
  const double nn = static_cast<double>(n);
  double var = nn * (nn - 1) * (2 * nn + 5) / 18.0;
  // Tie groups.
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    double g = 0;
    for (std::size_t j = i; j < n; ++j) {
      if (xs[j] == xs[i]) {
        seen[j] = true;
        ++g;
      }
    }
    if (g > 1) var -= g * (g - 1) * (2 * g + 5) / 18.0;
  }
  t.variance = var;
  if (var > 0) {
    if (t.s > 0) t.z = (static_cast<double>(t.s) - 1.0) / std::sqrt(var);
    if (t.s < 0) t.z = (static_cast<double>(t.s) + 1.0) / std::sqrt(var);
  }
  return t;
}

/// One-sided test for an increasing trend at the 95% level.
inline bool increasing_trend_95(std::span<const double> xs) { return mann_kendall(xs).z > kZ95OneSided; }

}  // namespace qgec::stats
