#pragma once

// Unit convention used throughout: van der Waals units with hbar = 1 and
// atomic mass m = 1.  Lengths are measured in r_vdW and energies in
// 1/(m r_vdW^2).  In these units the dispersion coefficient of the
// Lennard-Jones model is C6 = 16 (because r_vdW = (2 mu_2b C6)^{1/4}/2
// with mu_2b = 1/2).

namespace hyper2d {

inline constexpr double euler_gamma = 0.57721566490153286060651209;
inline constexpr double pi = 3.14159265358979323846264338;

// two-body reduced mass, m/2
inline constexpr double mu_2b = 0.5;

// three-body reduced mass for equal masses, m/sqrt(3)
inline constexpr double mu_3b = 0.57735026918962576450914878;

// kinematic rescaling between a pair separation and the corresponding
// mass-scaled Jacobi length: r_pair = |rho_pair| / d, d = 3^{1/4}/2^{1/2}
inline constexpr double jacobi_d = 0.93060485910209959892686106;

// Lennard-Jones dispersion coefficient in vdW units
inline constexpr double lj_c6 = 16.0;

}  // namespace hyper2d
