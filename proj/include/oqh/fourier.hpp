#pragma once

#include <vector>

#include "oqh/signal.hpp"

namespace oqh {

/// e(t) = exp(2 pi i t).
cplx unit_phase(double t);

/// Fractional part of a*m with the product formed exactly (two-product via
/// fma), so the phase is accurate even when a*m is of order 2^50. Result in
/// [-0.5, 0.5] up to one rounding.
double frac_mul(double a, double m);

/// e(alpha m^2 - beta m) with exact phase reduction; |m| must stay below 2^26.
cplx quad_phase(double alpha, double beta, int64_t m);

/// Forward FFT, convention X_k = sum_n x_n e(-kn/N). Any length.
std::vector<cplx> fft_forward(const std::vector<cplx>& x);
std::vector<cplx> fft_inverse(const std::vector<cplx>& x);

/// Samples f^(k/L) = sum_n f(n) e(-kn/L) for k = 0..L-1. Requires L at least
/// the support length of f, so the residue folding is injective.
std::vector<cplx> dft_on_grid(const Signal& f, int64_t L);

enum class ConvMethod { direct, fft };

/// Window with the support hull of f expanded by `factor` times its diameter
/// on both sides.
Window default_window(const Signal& f, int64_t factor = 4);

/// H^alpha f(n) = sum_{m != 0} e(alpha m^2) f(n-m)/m, restricted to `window`.
/// The sum is finite and exact for each n. Requires window to contain supp f.
Signal apply_halpha(const Signal& f, double alpha, const Window& window,
                    ConvMethod method = ConvMethod::fft);

}  // namespace oqh
