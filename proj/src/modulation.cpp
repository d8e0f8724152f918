#include "oqh/modulation.hpp"

#include <cmath>

#include "oqh/bump.hpp"
#include "oqh/fourier.hpp"

namespace oqh {

namespace {
double wrap_half(double t) { return t - std::nearbyint(t); }
}

int64_t modulation_grid_size(const Signal& f, int64_t s, double alpha) {
  int64_t base = static_cast<int64_t>(std::llround(std::pow(10.0, s + 2)));
  if (!f.empty()) base = std::max(base, f.support_hull()->length());
  auto as = find_alpha_s(alpha, s);
  int64_t q = as ? as->den : 1;
  return ((base + q - 1) / q) * q;
}

ModulationFamily modulation_projection(const Signal& f, int64_t s, double alpha,
                                       int64_t L) {
  if (L < static_cast<int64_t>(std::llround(std::pow(10.0, s + 2))))
    throw ParameterError("modulation_projection: grid too coarse for chi_s");
  ModulationFamily fam;
  fam.s = s;
  fam.grid = L;
  fam.alpha_s = find_alpha_s(alpha, s);
  if (!fam.alpha_s) return fam;

  const int64_t Q = fam.alpha_s->den;
  if (L % Q != 0)
    throw ParameterError("modulation_projection: L must be a multiple of Q");

  auto fhat = dft_on_grid(f, L);
  const int64_t shift_unit = L / Q;
  for (int64_t B : coprime_residues(Q)) {
    std::vector<cplx> comp(static_cast<size_t>(L), cplx(0.0));
    double norm2 = 0.0;
    for (int64_t k = 0; k < L; ++k) {
      double beta = wrap_half(static_cast<double>(k) / static_cast<double>(L));
      double c = chi_s(s, beta);
      if (c == 0.0) continue;
      int64_t kk = (k + B * shift_unit) % L;
      cplx v = std::sqrt(c) * fhat[static_cast<size_t>(kk)];
      comp[static_cast<size_t>(k)] = v;
      norm2 += std::norm(v);
    }
    fam.residues.push_back(B);
    fam.component_norm2.push_back(norm2 / static_cast<double>(L));
    fam.freq_components.push_back(std::move(comp));
  }
  return fam;
}

double total_component_norm2(const ModulationFamily& fam) {
  double acc = 0.0;
  for (double v : fam.component_norm2) acc += v;
  return acc;
}

TransferReport major_transfer_check(const Signal& f, const Signal& g, int64_t s,
                                    double alpha, const ArcParams& params,
                                    int64_t jmax, int64_t L,
                                    const QuadratureSettings& quad) {
  TransferReport rep;
  rep.jmin = static_cast<int64_t>(
      std::ceil(static_cast<double>(s) / params.epsilon));
  rep.jmax = jmax;

  auto as = find_alpha_s(alpha, s);
  if (!as) return rep;  // both sides vanish
  const int64_t Q = as->den;
  if (L % Q != 0)
    throw ParameterError("major_transfer_check: L must be a multiple of Q");
  const double dx = wrap_half(alpha - as->value());
  const double cx = chi_s(s, dx);

  auto fhat = dft_on_grid(f, L);
  auto ghat = dft_on_grid(g, L);

  // Cache U^s on the frequency offsets that occur (multiples of 1/L inside
  // the chi_s window).
  const double radius = chi_support_radius(s);
  const int64_t koff_max = static_cast<int64_t>(std::floor(radius * L));
  std::vector<cplx> us_cache(static_cast<size_t>(2 * koff_max + 1));
  for (int64_t d = -koff_max; d <= koff_max; ++d)
    us_cache[static_cast<size_t>(d + koff_max)] =
        eval_Us(dx, static_cast<double>(d) / static_cast<double>(L), rep.jmin,
                jmax, quad);

  // Direct route: (1/L) sum_k L^{alpha,s}(k/L) f^(k/L) conj(g^(k/L)), with
  // L^{alpha,s} supported on the chi_s windows around each B/Q.
  cplx lhs = 0.0;
  const int64_t shift_unit = L / Q;
  for (int64_t B : coprime_residues(Q)) {
    cplx S = gauss_sum(*as, B);
    for (int64_t d = -koff_max; d <= koff_max; ++d) {
      double dy = static_cast<double>(d) / static_cast<double>(L);
      double cy = chi_s(s, dy);
      if (cy == 0.0) continue;
      int64_t k = ((B * shift_unit + d) % L + L) % L;
      cplx mult = S * us_cache[static_cast<size_t>(d + koff_max)] * cx * cy;
      lhs += mult * fhat[static_cast<size_t>(k)] * std::conj(ghat[static_cast<size_t>(k)]);
    }
  }
  lhs /= static_cast<double>(L);
  rep.lhs = lhs;
  rep.lhs_abs = std::abs(lhs);

  // Modulation route: chi_s(alpha - alpha_s) sum_B S(alpha_s, B/Q)
  // <T_{U-check^s} f_{s,B/Q}, g_{s,B/Q}> on the same grid.
  auto ffam = modulation_projection(f, s, alpha, L);
  auto gfam = modulation_projection(g, s, alpha, L);
  cplx rhs = 0.0;
  double max_gauss = 0.0, pair_sum = 0.0, sup_us = 0.0;
  for (size_t bi = 0; bi < ffam.residues.size(); ++bi) {
    cplx S = gauss_sum(*as, ffam.residues[bi]);
    max_gauss = std::max(max_gauss, std::abs(S));
    cplx inner = 0.0;
    for (int64_t k = 0; k < L; ++k) {
      const cplx& fv = ffam.freq_components[bi][static_cast<size_t>(k)];
      const cplx& gv = gfam.freq_components[bi][static_cast<size_t>(k)];
      if (fv == cplx(0.0) && gv == cplx(0.0)) continue;
      double beta = wrap_half(static_cast<double>(k) / static_cast<double>(L));
      int64_t d = std::llround(beta * static_cast<double>(L));
      cplx us = us_cache[static_cast<size_t>(d + koff_max)];
      inner += us * fv * std::conj(gv);
    }
    rhs += S * inner / static_cast<double>(L);
    pair_sum += std::sqrt(ffam.component_norm2[bi] * gfam.component_norm2[bi]);
  }
  rhs *= cx;
  rep.rhs = rhs;

  for (const cplx& v : us_cache) sup_us = std::max(sup_us, std::abs(v));
  rep.gauss_weighted_bound = max_gauss * pair_sum * sup_us;

  double scale = std::max(std::abs(lhs), std::abs(rhs));
  rep.rel_discrepancy = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
  return rep;
}

}  // namespace oqh
