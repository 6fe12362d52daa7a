#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyper2d/errors.hpp"

namespace hyper2d {

/// Clamped B-spline basis on a breakpoint sequence.  `order` is the
/// polynomial degree plus one (order 4 = cubics).
class BsplineBasis {
 public:
  BsplineBasis() = default;

  BsplineBasis(std::vector<double> breakpoints, int order)
      : breaks_(std::move(breakpoints)), order_(order) {
    if (order_ < 2) throw ValidationError("spline order must be >= 2");
    if (breaks_.size() < 2) throw ValidationError("need at least two breakpoints");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()))
      throw ValidationError("breakpoints must be sorted");
    knots_.reserve(breaks_.size() + 2 * (order_ - 1));
    for (int i = 0; i < order_ - 1; ++i) knots_.push_back(breaks_.front());
    knots_.insert(knots_.end(), breaks_.begin(), breaks_.end());
    for (int i = 0; i < order_ - 1; ++i) knots_.push_back(breaks_.back());
  }

  int order() const { return order_; }
  int size() const { return static_cast<int>(knots_.size()) - order_; }
  double xmin() const { return breaks_.front(); }
  double xmax() const { return breaks_.back(); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Knot span index i with knots[i] <= x < knots[i+1].
  int find_span(double x) const {
    int p = order_ - 1;
    int hi = static_cast<int>(knots_.size()) - order_ - 1;
    if (x >= knots_[hi + 1]) return hi;
    if (x <= knots_[p]) return p;
    auto it = std::upper_bound(knots_.begin() + p, knots_.begin() + hi + 1, x);
    return static_cast<int>(it - knots_.begin()) - 1;
  }

  /// Values of the `order` basis functions that are nonzero at x.
  /// Function indices are span-order+1 .. span.
  void eval(double x, int& span, double* B) const {
    span = find_span(x);
    int p = order_ - 1;
    std::vector<double> left(p + 1), right(p + 1);
    B[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
      left[j] = x - knots_[span + 1 - j];
      right[j] = knots_[span + j] - x;
      double saved = 0.0;
      for (int r = 0; r < j; ++r) {
        double tmp = B[r] / (right[r + 1] + left[j - r]);
        B[r] = saved + right[r + 1] * tmp;
        saved = left[j - r] * tmp;
      }
      B[j] = saved;
    }
  }

  /// Values and first derivatives of the nonzero basis functions at x.
  void eval_with_deriv(double x, int& span, double* B, double* dB) const {
    span = find_span(x);
    int p = order_ - 1;
    // degree p values
    eval_degree(x, span, p, B);
    if (p == 0) {
      dB[0] = 0.0;
      return;
    }
    // degree p-1 values, shifted index range
    std::vector<double> nm1(p);
    eval_degree(x, span, p - 1, nm1.data());
    for (int r = 0; r <= p; ++r) {
      int i = span - p + r;
      double d = 0.0;
      if (r >= 1) {
        double den = knots_[i + p] - knots_[i];
        if (den > 0.0) d += nm1[r - 1] / den;
      }
      if (r <= p - 1) {
        double den = knots_[i + p + 1] - knots_[i + 1];
        if (den > 0.0) d -= nm1[r] / den;
      }
      dB[r] = p * d;
    }
  }

  /// Spline value sum_i c[i] B_i(x).
  double value(const std::vector<double>& c, double x) const {
    int span;
    std::vector<double> B(order_);
    eval(x, span, B.data());
    double s = 0.0;
    for (int r = 0; r < order_; ++r) s += c[span - order_ + 1 + r] * B[r];
    return s;
  }

 private:
  void eval_degree(double x, int span, int deg, double* N) const {
    std::vector<double> left(deg + 1), right(deg + 1);
    N[0] = 1.0;
    for (int j = 1; j <= deg; ++j) {
      left[j] = x - knots_[span + 1 - j];
      right[j] = knots_[span + j] - x;
      double saved = 0.0;
      for (int r = 0; r < j; ++r) {
        double tmp = N[r] / (right[r + 1] + left[j - r]);
        N[r] = saved + right[r + 1] * tmp;
        saved = left[j - r] * tmp;
      }
      N[j] = saved;
    }
  }

  std::vector<double> breaks_;
  int order_ = 0;
  std::vector<double> knots_;
};

}  // namespace hyper2d
