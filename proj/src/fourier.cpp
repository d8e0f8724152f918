#include "oqh/fourier.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

namespace oqh {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

cplx unit_phase(double t) { return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)}; }

double frac_mul(double a, double m) {
  double hi = a * m;
  double lo = std::fma(a, m, -hi);
  double f = (hi - std::nearbyint(hi)) + lo;
  return f;
}

cplx quad_phase(double alpha, double beta, int64_t m) {
  double md = static_cast<double>(m);
  double phase = frac_mul(alpha, md * md) - frac_mul(beta, md);
  return unit_phase(phase);
}

std::vector<cplx> fft_forward(const std::vector<cplx>& x) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, x);
  return out;
}

std::vector<cplx> fft_inverse(const std::vector<cplx>& x) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, x);
  return out;
}

std::vector<cplx> dft_on_grid(const Signal& f, int64_t L) {
  if (L < 1) throw ParameterError("dft_on_grid: L must be positive");
  if (!f.empty() && L < f.support_hull()->length())
    throw ParameterError("dft_on_grid: L smaller than support length");
  std::vector<cplx> folded(static_cast<size_t>(L), cplx(0.0));
  if (!f.empty()) {
    for (int64_t n = f.support_min(); n <= f.support_max(); ++n) {
      int64_t r = ((n % L) + L) % L;
      folded[static_cast<size_t>(r)] += f(n);
    }
  }
  return fft_forward(folded);
}

Window default_window(const Signal& f, int64_t factor) {
  if (f.empty()) return Window(0, 0);
  int64_t d = f.support_hull()->length();
  return Window(f.support_min() - factor * d, f.support_max() + factor * d);
}

namespace {

// Kernel e(alpha m^2)/m on m in [mlo, mhi], zero at m = 0.
std::vector<cplx> halpha_kernel(double alpha, int64_t mlo, int64_t mhi) {
  std::vector<cplx> k(static_cast<size_t>(mhi - mlo + 1));
  for (int64_t m = mlo; m <= mhi; ++m) {
    k[static_cast<size_t>(m - mlo)] =
        (m == 0) ? cplx(0.0)
                 : quad_phase(alpha, 0.0, m) / static_cast<double>(m);
  }
  return k;
}

int64_t next_pow2(int64_t n) {
  int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Signal apply_halpha(const Signal& f, double alpha, const Window& window,
                    ConvMethod method) {
  if (f.empty()) return Signal();
  if (!window.interval.contains(*f.support_hull()))
    throw ParameterError("apply_halpha: window does not cover supp f");

  const int64_t wa = window.interval.a, wb = window.interval.b;
  const int64_t sa = f.support_min(), sb = f.support_max();
  const int64_t mlo = wa - sb, mhi = wb - sa;

  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(wb - wa + 1);

  if (method == ConvMethod::direct) {
    for (int64_t n = wa; n <= wb; ++n) {
      cplx acc = 0.0;
      for (int64_t k = sa; k <= sb; ++k) {
        int64_t m = n - k;
        if (m == 0) continue;
        acc += quad_phase(alpha, 0.0, m) / static_cast<double>(m) * f(k);
      }
      out[n - wa] = acc;
    }
  } else {
    auto kern = halpha_kernel(alpha, mlo, mhi);
    const int64_t nk = static_cast<int64_t>(kern.size());
    const int64_t nf = sb - sa + 1;
    const int64_t N = next_pow2(nk + nf - 1);
    std::vector<cplx> a(static_cast<size_t>(N), cplx(0.0));
    std::vector<cplx> b(static_cast<size_t>(N), cplx(0.0));
    std::copy(kern.begin(), kern.end(), a.begin());
    for (int64_t k = 0; k < nf; ++k) b[static_cast<size_t>(k)] = f(sa + k);
    auto A = fft_forward(a);
    auto B = fft_forward(b);
    for (int64_t i = 0; i < N; ++i) A[static_cast<size_t>(i)] *= B[static_cast<size_t>(i)];
    auto c = fft_inverse(A);
    // c[i] = sum over kernel index p + signal index q = i; output point
    // n = (mlo + p) + (sa + q) = mlo + sa + i.
    for (int64_t n = wa; n <= wb; ++n) out[n - wa] = c[static_cast<size_t>(n - mlo - sa)];
  }
  return Signal(wa, std::move(out));
}

}  // namespace oqh
