#pragma once

// Brute-force reference computations used only by tests. They take different
// numeric routes from the library (raw moment sums in long double).

#include <cmath>
#include <span>
#include <vector>

namespace oracle {

inline long double mean(std::span<const double> v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

/// sqrt(E[x^2] - E[x]^2) / E[x]
inline double cv(std::span<const double> v) {
  long double s = 0, s2 = 0;
  for (double x : v) {
    s += x;
    s2 += static_cast<long double>(x) * x;
  }
  const long double n = v.size();
  long double var = s2 / n - (s / n) * (s / n);
  if (var < 0) var = 0;
  return static_cast<double>(std::sqrt(var) / (s / n));
}

/// (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2)(n*Syy - Sy^2))
inline double pearson(std::span<const double> x, std::span<const double> y) {
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const long double n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) /
                             std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

}  // namespace oracle
