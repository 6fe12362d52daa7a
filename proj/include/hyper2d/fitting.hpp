#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "hyper2d/errors.hpp"

namespace hyper2d {

struct FitResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;   // from J^T J at the optimum
  double rss = 0.0;             // sum of squared residuals
  double residual_rms = 0.0;
  bool converged = false;
};

inline Eigen::VectorXd linear_lsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
  return A.colPivHouseholderQr().solve(y);
}

/// Damped Gauss-Newton (Levenberg-Marquardt) with a forward-difference
/// Jacobian.  `residual` maps parameters to the residual vector.
inline FitResult levenberg_marquardt(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x0, int max_iter = 300, double ftol = 1e-14) {
  FitResult out;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = residual(x);
  double rss = r.squaredNorm();
  const int m = static_cast<int>(r.size());
  const int n = static_cast<int>(x.size());
  double lambda = 1e-3;

  Eigen::MatrixXd J(m, n);
  auto fill_jacobian = [&](const Eigen::VectorXd& xc, const Eigen::VectorXd& rc) {
    for (int j = 0; j < n; ++j) {
      double h = 1e-7 * std::max(1.0, std::abs(xc[j]));
      Eigen::VectorXd xp = xc;
      xp[j] += h;
      J.col(j) = (residual(xp) - rc) / h;
    }
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    fill_jacobian(x, r);
    Eigen::MatrixXd jtj = J.transpose() * J;
    Eigen::VectorXd jtr = J.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      Eigen::MatrixXd ad = jtj;
      for (int j = 0; j < n; ++j) ad(j, j) += lambda * std::max(jtj(j, j), 1e-30);
      Eigen::VectorXd step = ad.ldlt().solve(-jtr);
      Eigen::VectorXd xn = x + step;
      Eigen::VectorXd rn = residual(xn);
      double rss_n = rn.squaredNorm();
      if (rss_n < rss) {
        double gain = (rss - rss_n) / std::max(rss, 1e-300);
        x = xn;
        r = rn;
        rss = rss_n;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (gain < ftol) {
          out.converged = true;
          iter = max_iter;  // done
        }
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!accepted) {
      out.converged = true;  // stalled at a (local) optimum
      break;
    }
  }

  fill_jacobian(x, r);
  Eigen::MatrixXd jtj = J.transpose() * J;
  double sigma2 = (m > n) ? rss / double(m - n) : 0.0;
  out.params = x;
  out.covariance = sigma2 * jtj.inverse();
  out.rss = rss;
  out.residual_rms = std::sqrt(rss / std::max(1, m));
  return out;
}

/// Deterministic multistart wrapper; starts are tried in order and the
/// lowest-RSS fit wins.
inline FitResult levenberg_marquardt_multistart(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::vector<Eigen::VectorXd>& starts, int max_iter = 300) {
  if (starts.empty()) throw ValidationError("multistart needs at least one start");
  FitResult best;
  bool have = false;
  for (const auto& s : starts) {
    FitResult r = levenberg_marquardt(residual, s, max_iter);
    if (!have || r.rss < best.rss) {
      best = r;
      have = true;
    }
  }
  return best;
}

}  // namespace hyper2d
