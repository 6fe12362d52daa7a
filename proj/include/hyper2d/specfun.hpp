#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "hyper2d/constants.hpp"
#include "hyper2d/errors.hpp"

namespace hyper2d {

namespace detail {

template <typename T>
inline T digamma_asymptotic(T z) {
  // valid for |z| large, Re z > 0
  T inv = T(1.0) / z;
  T inv2 = inv * inv;
  // Bernoulli tail B_2/(2 z^2) + B_4/(4 z^4) + ...
  T tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return std::log(z) - 0.5 * inv - tail;
}

}  // namespace detail

/// Digamma for real argument; handles negative non-integer x via reflection.
inline double digamma(double x) {
  if (x <= 0.0) {
    if (x == std::floor(x)) throw ValidationError("digamma pole at non-positive integer");
    // psi(x) = psi(1-x) - pi*cot(pi*x)
    return digamma(1.0 - x) - pi / std::tan(pi * x);
  }
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  return acc + detail::digamma_asymptotic(x);
}

/// Digamma for complex argument with Re(z) > 0 or |Im(z)| > 0.
inline std::complex<double> digamma(std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  while (z.real() < 12.0 && std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  return acc + detail::digamma_asymptotic(z);
}

/// Gauss hypergeometric 2F1 by direct power series; requires |z| < 1 and
/// convergence well inside the unit disk (used here with |z| <= 0.55).
template <typename T>
inline T hyp2f1_series(T a, T b, T c, double z) {
  T term(1.0);
  T sum(1.0);
  const double eps = 1e-17;
  int small_count = 0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + T(k)) * (b + T(k)) / ((c + T(k)) * double(k + 1)) * z;
    sum += term;
    if (std::abs(term) < eps * (1.0 + std::abs(sum))) {
      if (++small_count >= 3) return sum;
    } else {
      small_count = 0;
    }
  }
  throw ConvergenceError("hyp2f1_series did not converge");
}

namespace detail {

// Legendre function of integer degree by upward recurrence.
inline double legendre_p_int(int l, double x) {
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int n = 1; n < l; ++n) {
    double pn = ((2 * n + 1) * x * p - n * pm1) / (n + 1);
    pm1 = p;
    p = pn;
  }
  return p;
}

template <typename T>
inline T pochhammer(T a, int n) {
  T r(1.0);
  for (int k = 0; k < n; ++k) r *= a + T(k);
  return r;
}

// P_l(x) for x close to -1 where the defining series at (1-x)/2 is slow:
// logarithmic connection formula for 2F1(a,b;a+b;z).
template <typename T>
inline T legendre_p_log_branch(T l, double x) {
  const double w = 0.5 * (1.0 + x);  // 1 - (1-x)/2
  const double lw = std::log(w);
  T a = -l;
  T b = l + T(1.0);
  T term(1.0);
  T sum(0.0);
  for (int n = 0; n < 500; ++n) {
    T coef = T(2.0 * digamma(double(n + 1))) - digamma(a + T(n)) - digamma(b + T(n)) - T(lw);
    T add = term * coef;
    sum += add;
    if (n > 3 && std::abs(add) < 1e-17 * (1.0 + std::abs(sum))) break;
    term *= (a + T(n)) * (b + T(n)) / T(double((n + 1) * (n + 1))) * w;
  }
  return -std::sin(pi * l) / pi * sum;
}

// complex overload needs complex digamma of shifted degree arguments
inline std::complex<double> legendre_p_log_branch(std::complex<double> l, double x) {
  using C = std::complex<double>;
  const double w = 0.5 * (1.0 + x);
  const double lw = std::log(w);
  C a = -l;
  C b = l + 1.0;
  C term(1.0, 0.0);
  C sum(0.0, 0.0);
  for (int n = 0; n < 500; ++n) {
    C coef = C(2.0 * digamma(double(n + 1)), 0.0) - digamma(a + double(n)) - digamma(b + double(n)) - C(lw, 0.0);
    C add = term * coef;
    sum += add;
    if (n > 3 && std::abs(add) < 1e-17 * (1.0 + std::abs(sum))) break;
    term *= (a + double(n)) * (b + double(n)) / double((n + 1) * (n + 1)) * w;
  }
  return -std::sin(pi * l) / pi * sum;
}

}  // namespace detail

/// Legendre function of the first kind, real degree, argument in (-1, 1].
inline double legendre_p(double l, double x) {
  if (l >= 0.0 && l == std::floor(l) && l < 1e6)
    return detail::legendre_p_int(static_cast<int>(l), x);
  double u = 0.5 * (1.0 - x);
  if (u <= 0.55) return hyp2f1_series(-l, l + 1.0, 1.0, u);
  return detail::legendre_p_log_branch(l, x);
}

/// Legendre function of complex degree (real-valued on the cut for
/// conjugate-symmetric degrees such as the conical line -1/2 + i t).
inline std::complex<double> legendre_p(std::complex<double> l, double x) {
  using C = std::complex<double>;
  double u = 0.5 * (1.0 - x);
  if (u <= 0.55) return hyp2f1_series<C>(-l, l + 1.0, C(1.0, 0.0), u);
  return detail::legendre_p_log_branch(l, x);
}

/// Cylinder Bessel J_n and Y_n for non-negative integer order, plus
/// derivatives with respect to the argument.
inline double bessel_j(int n, double x) { return std::cyl_bessel_j(double(n), x); }
inline double bessel_y(int n, double x) { return std::cyl_neumann(double(n), x); }

inline double bessel_j_prime(int n, double x) {
  if (n == 0) return -std::cyl_bessel_j(1.0, x);
  return std::cyl_bessel_j(double(n - 1), x) - double(n) / x * std::cyl_bessel_j(double(n), x);
}

inline double bessel_y_prime(int n, double x) {
  if (n == 0) return -std::cyl_neumann(1.0, x);
  return std::cyl_neumann(double(n - 1), x) - double(n) / x * std::cyl_neumann(double(n), x);
}

}  // namespace hyper2d
