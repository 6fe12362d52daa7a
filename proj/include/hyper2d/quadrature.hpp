#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "hyper2d/constants.hpp"
#include "hyper2d/errors.hpp"

namespace hyper2d {

struct QuadRule {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;
};

/// Gauss-Legendre rule of order n, computed once and cached.
inline const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

template <typename F>
inline double integrate_gauss(const F& f, double a, double b, int n = 15) {
  const QuadRule& r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

namespace detail {

template <typename F>
inline double adapt_rec(const F& f, double a, double b, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = integrate_gauss(f, a, m, 15);
  double right = integrate_gauss(f, m, b, 15);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= tol * (1.0 + std::abs(left + right)))
    return left + right;
  return adapt_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adapt_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss quadrature with relative tolerance.
template <typename F>
inline double integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-10,
                                 int max_depth = 40) {
  if (a == b) return 0.0;
  double whole = integrate_gauss(f, a, b, 15);
  return detail::adapt_rec(f, a, b, whole, rel_tol, max_depth);
}

/// Adaptive quadrature in log(x); suited to integrands spread over many
/// decades.  Requires 0 < a < b.
template <typename F>
inline double integrate_adaptive_log(const F& f, double a, double b, double rel_tol = 1e-10) {
  if (a <= 0.0 || b <= a) throw ValidationError("integrate_adaptive_log needs 0 < a < b");
  auto g = [&](double t) {
    double x = std::exp(t);
    return x * f(x);
  };
  return integrate_adaptive(g, std::log(a), std::log(b), rel_tol);
}

}  // namespace hyper2d
