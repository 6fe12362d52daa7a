#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyper2d/constants.hpp"
#include "hyper2d/errors.hpp"
#include "hyper2d/specfun.hpp"

namespace hyper2d::twobody {

enum class PotentialKind { LennardJones, SechSquared, ZeroRange };

/// A two-body interaction model in vdW units.  The evaluated potential is
/// clamped to its value at `core_cutoff` for r below the cutoff, which
/// removes the unintegrable 1/r^12 core of the Lennard-Jones model.
struct PotentialModel {
  PotentialKind kind = PotentialKind::LennardJones;
  double lambda_vdw = 1.0;
  double depth = 0.0;
  double range_r0 = 1.0;
  double a_zero_range = 1.0;
  double core_cutoff = 0.05;

  static PotentialModel lennard_jones(double lambda, double cutoff_fraction = 0.05) {
    if (lambda <= 0.0) throw ValidationError("lambda_vdw must be positive");
    PotentialModel p;
    p.kind = PotentialKind::LennardJones;
    p.lambda_vdw = lambda;
    p.core_cutoff = cutoff_fraction * lambda;
    return p;
  }

  static PotentialModel sech_squared(double depth, double r0) {
    if (depth < 0.0) throw ValidationError("sech^2 depth must be >= 0");
    if (r0 <= 0.0) throw ValidationError("range_r0 must be positive");
    PotentialModel p;
    p.kind = PotentialKind::SechSquared;
    p.depth = depth;
    p.range_r0 = r0;
    p.core_cutoff = 1e-4 * r0;
    return p;
  }

  static PotentialModel zero_range(double a) {
    if (a <= 0.0) throw ValidationError("zero-range a must be positive");
    PotentialModel p;
    p.kind = PotentialKind::ZeroRange;
    p.a_zero_range = a;
    p.core_cutoff = 0.0;
    return p;
  }

  double value(double r) const {
    double rc = std::max(r, core_cutoff);
    switch (kind) {
      case PotentialKind::LennardJones: {
        double r6 = rc * rc * rc;
        r6 *= r6;
        double l6 = lambda_vdw * lambda_vdw * lambda_vdw;
        l6 *= l6;
        return -lj_c6 / r6 * (1.0 - l6 / r6);
      }
      case PotentialKind::SechSquared: {
        double s = 1.0 / std::cosh(rc / range_r0);
        return -depth * s * s;
      }
      case PotentialKind::ZeroRange:
        return 0.0;
    }
    return 0.0;
  }

  double interaction_scale() const {
    switch (kind) {
      case PotentialKind::LennardJones:
        return lambda_vdw;
      case PotentialKind::SechSquared:
        return range_r0;
      case PotentialKind::ZeroRange:
        return 0.0;
    }
    return 1.0;
  }

  double min_value() const {
    switch (kind) {
      case PotentialKind::LennardJones: {
        double l6 = std::pow(lambda_vdw, 6);
        return -lj_c6 / (4.0 * l6);
      }
      case PotentialKind::SechSquared:
        return -depth;
      case PotentialKind::ZeroRange:
        return 0.0;
    }
    return 0.0;
  }
};

struct PhaseShiftSample {
  double k = 0.0;
  int m_2b = 0;
  double delta = 0.0;      // mod pi, in (-pi/2, pi/2]
  double cot_delta = 0.0;
};

struct TwoBodyObservables {
  double a = 0.0;
  double re2 = 0.0;  // signed square of the effective range
  std::map<int, std::vector<double>> bound_energies;

  double re() const { return re2 > 0.0 ? std::sqrt(re2) : 0.0; }
  int n_bound(int m) const {
    auto it = bound_energies.find(m);
    return it == bound_energies.end() ? 0 : static_cast<int>(it->second.size());
  }
};

struct SolverOptions {
  double r_max = 2.0e3;          // matching radius for phase shifts
  double r_max_zero_energy = 1.5e3;
  double h_max = 5.0e-3;         // log-grid step cap
  double step_scale = 1.0;       // multiplies the chosen step (convergence checks)
  int points_per_wavelength = 40;
  double q_cap = 4.0e4;          // largest |Q| carried by the log-grid Numerov
  double window_ka_min = 1e-4;   // threshold-expansion fit window
  double window_ka_max = 1e-2;
  int window_points = 8;
};

namespace detail {

// Radial problem in log coordinate t = ln r with y(t) = u(r)/sqrt(r):
//   y'' + Q(t) y = 0,  Q = 2 mu_2b r^2 (E - v(r)) - m^2.
struct LogNumerov {
  const PotentialModel* pot;
  double energy;
  int m;

  double q(double t) const {
    double r = std::exp(t);
    return 2.0 * mu_2b * r * r * (energy - pot->value(r)) - double(m) * double(m);
  }

  // Push the start of the grid outward past the steep repulsive core so
  // that |Q| stays representable by the step size; the skipped region is
  // classically forbidden by hundreds of decay lengths.
  double start_point(double t_lo, double t_hi, const SolverOptions& opt) const {
    if (q(t_lo) > -opt.q_cap) return t_lo;
    double a = t_lo, b = t_hi;
    // q is increasing out of the core wall; bisect q(t) = -q_cap
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
      double mid = 0.5 * (a + b);
      if (q(mid) > -opt.q_cap)
        b = mid;
      else
        a = mid;
    }
    return a;
  }

  double step_size(double t0, double t1, const SolverOptions& opt) const {
    double qmax = 1.0, qabs = 1.0;
    int scan = 400;
    for (int i = 0; i <= scan; ++i) {
      double t = t0 + (t1 - t0) * i / scan;
      double qi = q(t);
      qmax = std::max(qmax, qi);
      qabs = std::max(qabs, std::abs(qi));
    }
    double h_osc = 2.0 * pi / (opt.points_per_wavelength * std::sqrt(qmax));
    double h_stiff = 0.5 / std::sqrt(std::min(qabs, opt.q_cap));
    return opt.step_scale * std::min({opt.h_max, h_osc, h_stiff});
  }
};

struct NumerovResult {
  std::vector<double> t;
  std::vector<double> y;
  int nodes = 0;
  double h = 0.0;
};

// Outward Numerov sweep with renormalization guard.  Seeds select the
// regular solution: zero value inside a classically forbidden core,
// r^m power law otherwise.
inline NumerovResult numerov_outward(const LogNumerov& eq, double t0, double t1, double h) {
  NumerovResult res;
  int n = std::max(8, static_cast<int>(std::ceil((t1 - t0) / h)));
  res.h = (t1 - t0) / n;
  h = res.h;
  res.t.resize(n + 1);
  res.y.resize(n + 1);
  for (int i = 0; i <= n; ++i) res.t[i] = t0 + h * i;

  double y0, y1;
  if (eq.q(t0) < -1.0) {
    y0 = 0.0;
    y1 = 1e-150;
  } else {
    y0 = std::exp(eq.m * t0);
    y1 = std::exp(eq.m * res.t[1]);
    double scale = std::max(std::abs(y0), std::abs(y1));
    y0 /= scale;
    y1 /= scale;
  }
  res.y[0] = y0;
  res.y[1] = y1;

  double h2 = h * h / 12.0;
  double qm = eq.q(res.t[0]);
  double q0 = eq.q(res.t[1]);
  for (int i = 1; i < n; ++i) {
    double qp = eq.q(res.t[i + 1]);
    double yp = ((2.0 - 10.0 * h2 * q0) * res.y[i] - (1.0 + h2 * qm) * res.y[i - 1]) /
                (1.0 + h2 * qp);
    res.y[i + 1] = yp;
    if (res.y[i] != 0.0 && yp * res.y[i] < 0.0) ++res.nodes;
    if (std::abs(yp) > 1e250) {
      double s = 1e-200;
      for (int j = 0; j <= i + 1; ++j) res.y[j] *= s;
    }
    qm = q0;
    q0 = qp;
  }
  if (!std::isfinite(res.y[n]))
    throw ConvergenceError("radial integration overflowed; step underflow or bad parameters");
  return res;
}

// y'(t) at the final grid point, one-sided 5-point O(h^4) formula.
inline double end_derivative(const NumerovResult& r) {
  size_t n = r.y.size() - 1;
  if (n < 4) throw ConvergenceError("grid too short for derivative stencil");
  return (25.0 * r.y[n] - 48.0 * r.y[n - 1] + 36.0 * r.y[n - 2] - 16.0 * r.y[n - 3] +
          3.0 * r.y[n - 4]) /
         (12.0 * r.h);
}

inline double start_derivative(const NumerovResult& r) {
  if (r.y.size() < 5) throw ConvergenceError("grid too short for derivative stencil");
  return (-25.0 * r.y[0] + 48.0 * r.y[1] - 36.0 * r.y[2] + 16.0 * r.y[3] - 3.0 * r.y[4]) /
         (12.0 * r.h);
}

inline double default_r_min(const PotentialModel& pot) {
  switch (pot.kind) {
    case PotentialKind::LennardJones:
      return pot.core_cutoff;
    case PotentialKind::SechSquared:
      return std::min(1e-3 * pot.range_r0, 1e-3);
    case PotentialKind::ZeroRange:
      throw ValidationError("zero-range model has no radial grid");
  }
  return 1e-3;
}

}  // namespace detail

/// Scattering phase shift for partial wave m_2b at wavenumber k > 0.
inline PhaseShiftSample phaseshift(const PotentialModel& pot, double k, int m_2b,
                                   const SolverOptions& opt = {}) {
  if (k <= 0.0) throw ValidationError("phaseshift needs k > 0");
  if (pot.kind == PotentialKind::ZeroRange) {
    if (m_2b != 0) throw ValidationError("zero-range model defines only m_2b = 0");
    PhaseShiftSample s;
    s.k = k;
    s.m_2b = 0;
    s.cot_delta = 2.0 / pi * (euler_gamma + std::log(0.5 * k * pot.a_zero_range));
    s.delta = std::atan(1.0 / s.cot_delta);
    return s;
  }

  detail::LogNumerov eq{&pot, k * k / (2.0 * mu_2b), m_2b};
  double r0 = detail::default_r_min(pot);
  double r1 = opt.r_max;
  double t1 = std::log(r1);
  double t0 = eq.start_point(std::log(r0), t1, opt);
  double h = eq.step_size(t0, t1, opt);
  auto sol = detail::numerov_outward(eq, t0, t1, h);

  double y = sol.y.back();
  double dy = detail::end_derivative(sol);
  if (y == 0.0 && dy == 0.0)
    throw ConvergenceError("solution underflowed before the matching radius; increase r_max");
  // u = sqrt(r) y(ln r): u'/u = (y/2 + y')/(r y)
  double r = r1;
  double x = k * r;
  double uj = std::sqrt(r) * bessel_j(std::abs(m_2b), x);
  double duj = (0.5 * bessel_j(std::abs(m_2b), x) + x * bessel_j_prime(std::abs(m_2b), x)) /
               std::sqrt(r);
  double uy = std::sqrt(r) * bessel_y(std::abs(m_2b), x);
  double duy = (0.5 * bessel_y(std::abs(m_2b), x) + x * bessel_y_prime(std::abs(m_2b), x)) /
               std::sqrt(r);
  double lu = (0.5 * y + dy) / (r * y);

  double num = lu * uj - duj;
  double den = lu * uy - duy;
  PhaseShiftSample s;
  s.k = k;
  s.m_2b = m_2b;
  s.delta = std::atan2(num, den);
  if (s.delta > 0.5 * pi) s.delta -= pi;
  if (s.delta <= -0.5 * pi) s.delta += pi;
  s.cot_delta = den / num;
  return s;
}

struct ZeroEnergySolution {
  double a = 0.0;        // node of the asymptotic log form
  double re2 = 0.0;      // effective-range square from the integral formula
  int nodes = 0;         // sign changes of the zero-energy solution on the grid
  double log_slope = 0.0;  // asymptotic d y/d ln r, sign-fixed by the inner lobe;
                           // vanishes exactly when a bound state sits at threshold
};

/// Zero-energy m_2b = 0 solve: scattering length from the asymptotic node,
/// signed effective-range square from the integral of asymptotic-minus-full
/// probability, and the node count (equals the number of m = 0 bound
/// states).
inline ZeroEnergySolution solve_zero_energy(const PotentialModel& pot,
                                            const SolverOptions& opt = {}) {
  if (pot.kind == PotentialKind::ZeroRange)
    return {pot.a_zero_range, 0.0, 1};

  detail::LogNumerov eq{&pot, 0.0, 0};
  double r0 = detail::default_r_min(pot);
  double r1 = opt.r_max_zero_energy;
  double t1 = std::log(r1);
  double t0 = eq.start_point(std::log(r0), t1, opt);
  double h = eq.step_size(t0, t1, opt);
  auto sol = detail::numerov_outward(eq, t0, t1, h);

  // asymptotically y = A (t - ln a)
  double slope = detail::end_derivative(sol);
  ZeroEnergySolution out;
  out.nodes = sol.nodes;
  // The outward seed fixes the global sign, so the asymptotic slope is a
  // continuous function of the potential parameter that crosses zero
  // exactly at a bound-state threshold.  Normalize by a positive inner
  // scale to make the magnitude parameter-comparable.
  double t_ref = std::log(std::max(5.0 * pot.interaction_scale(), 2.0 * std::exp(t0)));
  double scale = 0.0;
  for (size_t i = 0; i < sol.y.size() && sol.t[i] <= t_ref; ++i)
    scale = std::max(scale, std::abs(sol.y[i]));
  out.log_slope = slope / std::max(scale, 1e-300);
  double tstar;
  if (slope == 0.0)
    tstar = (sol.y.back() > 0.0) ? -700.0 : 700.0;
  else
    tstar = sol.t.back() - sol.y.back() / slope;
  // saturate instead of overflowing right at a pole of a
  tstar = std::min(700.0, std::max(-700.0, tstar));
  out.a = std::exp(tstar);

  // r_e^2 = 4 int_0^inf [ r ln^2(r/a) - u0^2 ] dr with u0 -> sqrt(r) ln(r/a)
  size_t n = sol.y.size();
  std::vector<double> f(n);
  for (size_t i = 0; i < n; ++i) {
    double t = sol.t[i];
    double r = std::exp(t);
    double w2 = r * (t - tstar) * (t - tstar);
    double u = std::sqrt(r) * sol.y[i] / slope;
    f[i] = (w2 - u * u) * r;  // extra r from dr = r dt
  }
  double integral = 0.0;
  // composite Simpson on the uniform t-grid
  size_t mlast = (n - 1) - ((n - 1) % 2);
  for (size_t i = 0; i + 2 <= mlast; i += 2)
    integral += sol.h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  for (size_t i = mlast; i + 1 < n; ++i) integral += 0.5 * sol.h * (f[i] + f[i + 1]);
  // analytic piece of the asymptotic form below the start of the grid
  double rmin = std::exp(t0);
  double l = t0 - tstar;
  integral += 0.5 * rmin * rmin * (l * l - l + 0.5);
  out.re2 = 4.0 * integral;
  return out;
}

/// Threshold-expansion fit of cot(delta_0) against {1, ln k, k^2} over the
/// configured ka window.
inline TwoBodyObservables extract_a_re(const PotentialModel& pot,
                                       const SolverOptions& opt = {}) {
  double a_guess = (pot.kind == PotentialKind::ZeroRange) ? pot.a_zero_range
                                                          : solve_zero_energy(pot, opt).a;
  int np = std::max(4, opt.window_points);
  std::vector<double> ks(np), cots(np);
  double lmin = std::log(opt.window_ka_min / a_guess);
  double lmax = std::log(opt.window_ka_max / a_guess);
  for (int i = 0; i < np; ++i) {
    ks[i] = std::exp(lmin + (lmax - lmin) * i / (np - 1));
    cots[i] = phaseshift(pot, ks[i], 0, opt).cot_delta;
  }
  // least squares for c0 + c1 ln k + c2 k^2
  double s[3][3] = {{0}}, b[3] = {0};
  for (int i = 0; i < np; ++i) {
    double basis[3] = {1.0, std::log(ks[i]), ks[i] * ks[i]};
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) s[p][q] += basis[p] * basis[q];
      b[p] += basis[p] * cots[i];
    }
  }
  // 3x3 Cramer solve
  auto det3 = [](double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  double d0 = det3(s);
  double c[3];
  for (int j = 0; j < 3; ++j) {
    double m[3][3];
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) m[p][q] = (q == j) ? b[p] : s[p][q];
    c[j] = det3(m) / d0;
  }
  double rms = 0.0;
  for (int i = 0; i < np; ++i) {
    double fit = c[0] + c[1] * std::log(ks[i]) + c[2] * ks[i] * ks[i];
    rms += (fit - cots[i]) * (fit - cots[i]);
  }
  rms = std::sqrt(rms / np);
  if (rms > 1e-6)
    throw ConvergenceError("threshold-expansion window too wide: fit rms " +
                           std::to_string(rms));
  if (std::abs(c[1] - 2.0 / pi) > 2e-3)
    throw ConvergenceError("threshold log slope deviates from 2/pi; expansion invalid");

  TwoBodyObservables obs;
  obs.a = 2.0 * std::exp(0.5 * pi * c[0] - euler_gamma);
  obs.re2 = 2.0 * pi * c[2];
  if (obs.a <= 0.0) throw ConvergenceError("extracted scattering length not positive");
  return obs;
}

/// Bound-state energies (positive-down, deepest first) for partial wave m.
inline std::vector<double> bound_states(const PotentialModel& pot, int m_2b,
                                        const SolverOptions& opt = {}) {
  if (pot.kind == PotentialKind::ZeroRange) {
    if (m_2b != 0) return {};
    return {2.0 * std::exp(-2.0 * euler_gamma) / (mu_2b * pot.a_zero_range * pot.a_zero_range)};
  }
  double vmin = pot.min_value();
  if (vmin >= 0.0) return {};
  double e_hi = -vmin * 1.001;  // binding cannot exceed the well depth
  double e_lo = 1e-14 * std::max(1.0, -vmin);

  double r0 = detail::default_r_min(pot);

  auto nodes_at = [&](double eb) {
    detail::LogNumerov eq{&pot, -eb, m_2b};
    double kappa = std::sqrt(2.0 * mu_2b * eb);
    double r_out = std::max(30.0 / kappa, 4.0);
    double t1 = std::log(r_out);
    double t0 = eq.start_point(std::log(r0), t1, opt);
    auto sol = detail::numerov_outward(eq, t0, t1, eq.step_size(t0, t1, opt));
    return sol.nodes;
  };

  int n_states = nodes_at(e_lo);
  std::vector<double> energies;

  auto mismatch = [&](double eb) {
    detail::LogNumerov eq{&pot, -eb, m_2b};
    double kappa = std::sqrt(2.0 * mu_2b * eb);
    double r_out = std::max(30.0 / kappa, 4.0);
    // match at the outer turning point (fallback: geometric mean radius)
    double r_match = r_out;
    for (double r = r_out; r > r0; r *= 0.98) {
      double qeff = 2.0 * mu_2b * r * r * (-eb - pot.value(r)) - m_2b * m_2b;
      if (qeff > 0.0) {
        r_match = r;
        break;
      }
    }
    if (r_match >= r_out * 0.99) r_match = std::sqrt(r0 * r_out);
    double tm = std::log(r_match), t1 = std::log(r_out);
    double t0 = eq.start_point(std::log(r0), tm, opt);
    double h = eq.step_size(t0, t1, opt);
    auto out = detail::numerov_outward(eq, t0, tm, h);
    // inward sweep: integrate the mirrored problem
    auto qrev = [&](double t) { return eq.q(t1 + tm - t); };
    int nin = std::max(8, static_cast<int>(std::ceil((t1 - tm) / h)));
    double hh = (t1 - tm) / nin;
    std::vector<double> yr(nin + 1);
    yr[0] = 1e-200;
    yr[1] = yr[0] * std::exp(std::sqrt(std::max(1.0, -eq.q(t1))) * hh);
    double h2 = hh * hh / 12.0;
    double qm = qrev(tm), q0 = qrev(tm + hh);
    for (int i = 1; i < nin; ++i) {
      double qp = qrev(tm + hh * (i + 1));
      yr[i + 1] = ((2.0 - 10.0 * h2 * q0) * yr[i] - (1.0 + h2 * qm) * yr[i - 1]) / (1.0 + h2 * qp);
      if (std::abs(yr[i + 1]) > 1e250)
        for (int j = 0; j <= i + 1; ++j) yr[j] *= 1e-200;
      qm = q0;
      q0 = qp;
    }
    double dout = detail::end_derivative(out) / out.y.back();
    // derivative of the inward solution at the matching point (reversed axis)
    size_t nn = yr.size() - 1;
    double din = -(25.0 * yr[nn] - 48.0 * yr[nn - 1] + 36.0 * yr[nn - 2] - 16.0 * yr[nn - 3] +
                   3.0 * yr[nn - 4]) /
                 (12.0 * hh) / yr[nn];
    return std::make_pair(dout - din, out.nodes);
  };

  for (int target = n_states - 1; target >= 0; --target) {
    // bracket by node count: nodes(e) <= target for e above the state
    double lo = e_lo, hi = e_hi;
    for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it) {
      double mid = std::sqrt(lo * hi);
      if (nodes_at(mid) > target)
        lo = mid;
      else
        hi = mid;
    }
    // refine on the log-derivative mismatch inside [lo/step, hi*step]
    double e1 = lo * 0.98, e2 = std::min(hi * 1.02, e_hi);
    auto f1 = mismatch(e1), f2 = mismatch(e2);
    // expand downwards if the sign change is not yet captured
    int guard = 0;
    while (f1.first * f2.first > 0.0 && guard++ < 60) {
      e1 *= 0.9;
      f1 = mismatch(e1);
      if (e1 < e_lo) break;
    }
    if (f1.first * f2.first > 0.0) {
      energies.push_back(std::sqrt(lo * hi));  // node bracket midpoint fallback
      continue;
    }
    for (int it = 0; it < 200 && (e2 - e1) / e2 > 1e-11; ++it) {
      double mid = 0.5 * (e1 + e2);
      auto fm = mismatch(mid);
      if (fm.first * f1.first <= 0.0) {
        e2 = mid;
        f2 = fm;
      } else {
        e1 = mid;
        f1 = fm;
      }
    }
    energies.push_back(0.5 * (e1 + e2));
  }
  std::sort(energies.rbegin(), energies.rend());
  return energies;
}

/// Universal binding energy for scattering length a, plus the
/// effective-range-corrected value when r_e is supplied.
inline std::pair<double, double> zero_range_energies(double a, std::optional<double> re) {
  if (a <= 0.0) throw ValidationError("zero_range_energies needs a > 0");
  double e0 = 2.0 * std::exp(-2.0 * euler_gamma) / (mu_2b * a * a);
  double ec = e0;
  if (re) {
    double x = *re / a;
    ec = e0 * (1.0 + 2.0 * std::exp(-2.0 * euler_gamma) * x * x);
  }
  return {e0, ec};
}

// ---- potential tuning ------------------------------------------------

namespace detail {

// Sign-flipping pole criterion: the asymptotic log-slope of the
// zero-energy solution vanishes exactly where a new bound state forms
// (a diverges).  Node counts cannot see a node that sits beyond the grid.
template <typename MakePot>
inline double find_pole_by_slope(const MakePot& make, int pole_index, double x_first,
                                 double x_last, const SolverOptions& opt) {
  if (pole_index < 1) throw ValidationError("pole index starts at 1");
  auto slope = [&](double x) { return solve_zero_energy(make(x), opt).log_slope; };
  const int n_scan = 400;
  double prev_x = x_first, prev_s = slope(x_first);
  int found = 0;
  for (int i = 1; i <= n_scan; ++i) {
    double x = x_first * std::pow(x_last / x_first, double(i) / n_scan);
    double s = slope(x);
    if (s == 0.0 || s * prev_s < 0.0) {
      ++found;
      if (found == pole_index) {
        double a1 = prev_x, a2 = x, s1 = prev_s;
        for (int it = 0; it < 200 && std::abs(a1 - a2) / std::abs(a1) > 1e-13; ++it) {
          double mid = 0.5 * (a1 + a2);
          double sm = slope(mid);
          if (sm == 0.0) return mid;
          if (sm * s1 > 0.0) {
            a1 = mid;
            s1 = sm;
          } else {
            a2 = mid;
          }
        }
        return 0.5 * (a1 + a2);
      }
    }
    prev_x = x;
    prev_s = s;
  }
  throw ConvergenceError("could not locate pole " + std::to_string(pole_index) +
                         " in the scanned parameter window");
}

}  // namespace detail

/// lambda_vdw at which the n-th m=0 bound state appears (a diverges).
inline double find_pole_lj(int pole_index, const SolverOptions& opt = {},
                           double lambda_hi = 2.0, double lambda_lo = 0.2) {
  return detail::find_pole_by_slope(
      [](double lam) { return PotentialModel::lennard_jones(lam); }, pole_index,
      lambda_hi, lambda_lo, opt);
}

/// sech^2 depth at which the n-th m=0 bound state appears (the first state
/// binds at infinitesimal depth).
inline double find_pole_sech(int pole_index, double r0 = 1.0, const SolverOptions& opt = {}) {
  if (pole_index == 1) return 0.0;
  return detail::find_pole_by_slope(
      [r0](double dep) { return PotentialModel::sech_squared(dep, r0); }, pole_index - 1,
      1e-3 / (r0 * r0), 1e4 / (r0 * r0), opt);
}

struct TuneResult {
  PotentialModel model;
  double achieved_a = 0.0;
  double branch_param_ainf = 0.0;  // parameter endpoint where a -> infinity
  double branch_param_azero = 0.0;  // parameter endpoint where a -> 0
};

namespace detail {

// Bisection for a target scattering length between two pole parameters.
// `a_of` must be monotone between the (slightly inset) endpoints.
template <typename AOf>
inline double tune_bisect(const AOf& a_of, double target_a, double p_ainf, double p_azero,
                          double rel_tol) {
  double inset = 1e-9;
  double lo = p_ainf + (p_azero - p_ainf) * inset;   // a huge here
  double hi = p_azero - (p_azero - p_ainf) * inset;  // a tiny here
  double alo = a_of(lo), ahi = a_of(hi);
  if (!((target_a < alo) == (target_a > ahi)) && !(alo == ahi))
    if (target_a > std::max(alo, ahi) || target_a < std::min(alo, ahi))
      throw ConvergenceError("target a outside branch range [" + std::to_string(std::min(alo, ahi)) +
                             ", " + std::to_string(std::max(alo, ahi)) + "]");
  bool decreasing = alo > ahi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double am = a_of(mid);
    if (std::abs(am / target_a - 1.0) < 0.2 * rel_tol) return mid;
    bool go_low = decreasing ? (am < target_a) : (am > target_a);
    if (go_low)
      hi = mid;
    else
      lo = mid;
    if (std::abs(hi - lo) <= 1e-15 * std::max(std::abs(hi), std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Tune lambda_vdw on the branch supporting `branch` m=0 bound states so
/// that the scattering length matches target_a within rel_tol.
inline TuneResult tune_lj(double target_a, int branch, double rel_tol = 1e-3,
                          const SolverOptions& opt = {}) {
  if (target_a <= 0.0) throw ValidationError("target a must be positive");
  double lam_ainf = find_pole_lj(branch, opt);       // state just formed: a -> inf
  double lam_azero = find_pole_lj(branch + 1, opt);  // next state imminent: a -> 0
  auto a_of = [&](double lam) {
    return solve_zero_energy(PotentialModel::lennard_jones(lam), opt).a;
  };
  double lam = detail::tune_bisect(a_of, target_a, lam_ainf, lam_azero, rel_tol);
  TuneResult res;
  res.model = PotentialModel::lennard_jones(lam);
  res.achieved_a = a_of(lam);
  res.branch_param_ainf = lam_ainf;
  res.branch_param_azero = lam_azero;
  if (std::abs(res.achieved_a / target_a - 1.0) > rel_tol)
    throw ConvergenceError("tuning did not reach target a within tolerance");
  return res;
}

/// Depth tuning for the sech^2 family at fixed r0 on the single- or
/// multi-bound-state branch.
inline TuneResult tune_sech(double target_a, int branch, double r0 = 1.0,
                            double rel_tol = 1e-3, const SolverOptions& opt = {}) {
  if (target_a <= 0.0) throw ValidationError("target a must be positive");
  double d_ainf = find_pole_sech(branch, r0, opt);
  double d_azero = find_pole_sech(branch + 1, r0, opt);
  if (branch == 1) d_ainf = std::max(d_ainf, 1e-8 * d_azero);
  auto a_of = [&](double dep) {
    return solve_zero_energy(PotentialModel::sech_squared(dep, r0), opt).a;
  };
  double dep = detail::tune_bisect(a_of, target_a, d_ainf, d_azero, rel_tol);
  TuneResult res;
  res.model = PotentialModel::sech_squared(dep, r0);
  res.achieved_a = a_of(dep);
  res.branch_param_ainf = d_ainf;
  res.branch_param_azero = d_azero;
  if (std::abs(res.achieved_a / target_a - 1.0) > rel_tol)
    throw ConvergenceError("tuning did not reach target a within tolerance");
  return res;
}

}  // namespace hyper2d::twobody
