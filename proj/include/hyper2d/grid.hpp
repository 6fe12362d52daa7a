#pragma once

#include <cmath>
#include <vector>

#include "hyper2d/errors.hpp"

namespace hyper2d {

inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw ValidationError("linspace needs n >= 2");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

inline std::vector<double> logspace(double a, double b, int n) {
  if (a <= 0.0 || b <= 0.0) throw ValidationError("logspace needs positive endpoints");
  std::vector<double> v = linspace(std::log(a), std::log(b), n);
  for (double& x : v) x = std::exp(x);
  v.front() = a;
  v.back() = b;
  return v;
}

/// Log-spaced grid specified by points per decade.
inline std::vector<double> logspace_per_decade(double a, double b, int per_decade) {
  double decades = std::log10(b / a);
  int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
  return logspace(a, b, n);
}

}  // namespace hyper2d
