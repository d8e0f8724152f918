#pragma once

#include <cstdint>

namespace oqh {

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly increasing between.
double smooth_step(double x);

/// Even plateau bump: 1 on [-1/2, 1/2], supported in [-1, 1].
double phi_bump(double t);

/// Odd dyadic shell: psi(t) = (phi(t) - phi(2t))/t, supported in
/// 1/4 <= |t| <= 1. The rescalings psi_j(t) = 2^{-j} psi(2^{-j} t) telescope
/// to 1/t for |t| >= 1/2.
double psi(double t);

/// 2^{-j} psi(2^{-j} t), supported in 2^{j-2} <= |t| <= 2^j.
double psi_j(std::int64_t j, double t);

/// Even cutoff: 1 on [-1/10, 1/10], supported in [-1/5, 1/5].
double chi(double t);

/// chi(10^s t): 1 on |t| <= 10^{-s-1}, supported in |t| <= (1/5) 10^{-s}.
/// The argument is wrapped to the torus representative in [-1/2, 1/2).
double chi_s(std::int64_t s, double t);

}  // namespace oqh
