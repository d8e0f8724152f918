#pragma once

#include <optional>
#include <vector>

#include "oqh/multiplier.hpp"
#include "oqh/number_theory.hpp"
#include "oqh/signal.hpp"

namespace oqh {

/// Frequency-localized copies of f around the level-s rationals B/Q sharing
/// the denominator of alpha_s. Components are held in the frequency domain
/// on a grid of size L (a multiple of Q), where
/// f^_{s,B/Q}(beta) = chi_s^{1/2}(beta) f^(beta + B/Q).
struct ModulationFamily {
  int64_t s = 0;
  std::optional<ReducedFraction> alpha_s;
  int64_t grid = 0;
  std::vector<int64_t> residues;                  // B values
  std::vector<std::vector<cplx>> freq_components; // per B, indexed by k
  std::vector<double> component_norm2;            // squared l^2 norms (Plancherel)
};

/// Smallest admissible grid: a multiple of the denominator of alpha_s that is
/// >= max(10^{s+2}, support length of f). Q=1 divides anything, so this also
/// covers alpha_s = none.
int64_t modulation_grid_size(const Signal& f, int64_t s, double alpha);

/// Requires L >= 10^{s+2} (resolves chi_s), L >= support length, and
/// Q | L so all shifted frequencies live on the same grid.
ModulationFamily modulation_projection(const Signal& f, int64_t s, double alpha,
                                       int64_t L);

double total_component_norm2(const ModulationFamily& fam);

struct TransferReport {
  cplx lhs = 0.0;            // <T_{L-check^{alpha,s}} f, g> by frequency quadrature
  cplx rhs = 0.0;            // Gauss-sum / modulation-projection route
  double rel_discrepancy = 0.0;
  double lhs_abs = 0.0;
  double gauss_weighted_bound = 0.0;  // max_B |S| * sum_B ||f_{s,B}|| ||g_{s,B}|| * sup|U^s|
  int64_t jmin = 0, jmax = 0;
};

/// Evaluates both sides of the major-arc transfer identity with the j-sum
/// truncated to [ceil(s/eps), jmax].
TransferReport major_transfer_check(const Signal& f, const Signal& g, int64_t s,
                                    double alpha, const ArcParams& params,
                                    int64_t jmax, int64_t L,
                                    const QuadratureSettings& quad = {});

}  // namespace oqh
