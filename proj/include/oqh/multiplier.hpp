#pragma once

#include <functional>
#include <vector>

#include "oqh/number_theory.hpp"
#include "oqh/signal.hpp"

namespace oqh {

struct QuadratureSettings {
  int nodes_per_panel = 32;
  double panels_per_osc = 4.0;
  double tolerance = 1e-9;
};

struct MultiplierModel {
  ArcParams arc;
  QuadratureSettings quad;
};

/// Gauss-Legendre integration of f over [a,b] with `panels` equal panels.
cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b,
                  int64_t panels, int nodes_per_panel = 32);

/// M_j^alpha(beta) = sum over 2^{j-2} <= |m| <= 2^j of e(alpha m^2 - beta m)
/// psi_j(m). Exact finite sum; j <= 26.
cplx eval_Mj(double alpha, double beta, int64_t j);

/// Partial sum of the full multiplier over 0 < |m| <= N.
cplx eval_M_truncated(double alpha, double beta, int64_t N);

/// M_j at (A/Q + da, B/Q' + db) with the rational part of the phase reduced
/// in integer arithmetic, so box offsets near a rational center carry no
/// rounding of the center itself.
cplx eval_Mj_near(const ReducedFraction& aq, double da,
                  const ReducedFraction& bq, double db, int64_t j);

/// U_j(x,y) = integral of e(x t^2 - y t) psi_j(t) dt by adaptive panel
/// quadrature; the panel count doubles once if self-consistency fails.
cplx eval_Uj(double x, double y, int64_t j, const QuadratureSettings& quad = {});

/// sum_{j = jmin..jmax} U_j(x,y) — the truncated continuous kernel U^s.
cplx eval_Us(double x, double y, int64_t jmin, int64_t jmax,
             const QuadratureSettings& quad = {});

/// L_{j,s}: the level-s major-arc model. At most one (A/Q) window is active.
cplx eval_Ljs(double alpha, double beta, int64_t j, int64_t s,
              const QuadratureSettings& quad = {});

/// L_j = sum_{1 <= s <= eps j} L_{j,s}.
cplx eval_Lj(double alpha, double beta, int64_t j, const ArcParams& params,
             const QuadratureSettings& quad = {});

/// E_j = M_j - L_j.
cplx eval_Ej(double alpha, double beta, int64_t j, const ArcParams& params,
             const QuadratureSettings& quad = {});

/// M_j sampled at beta = k/L for k = 0..L-1, via an FFT of the kernel
/// e(alpha m^2) psi_j(m). Requires L >= 2^{j+1}.
std::vector<cplx> Mj_on_grid(double alpha, int64_t j, int64_t L);

/// L_j sampled at beta = k/L; nonzero only inside the chi_s windows.
std::vector<cplx> Lj_on_grid(double alpha, int64_t j, const ArcParams& params,
                             int64_t L, const QuadratureSettings& quad = {});

std::vector<cplx> Ej_on_grid(double alpha, int64_t j, const ArcParams& params,
                             int64_t L, const QuadratureSettings& quad = {});

struct KernelEj {
  Signal kernel;        // F^{-1} E_j on m in [-L/2, L/2)
  int64_t split = 0;    // 2^{3j}
  bool far_part_empty = true;  // true when 2^{3j} >= L/2
};

/// Inverse-transform kernel of E_j: the M_j part e(alpha m^2) psi_j(m) is
/// exact, the L_j part comes from grid quadrature. L >= 2^{j+3}.
KernelEj kernel_Ej(double alpha, int64_t j, const ArcParams& params, int64_t L,
                   const QuadratureSettings& quad = {});

struct SupEstimate {
  double value = 0.0;
  double argmax_beta = 0.0;
  int64_t grid = 0;
  int64_t refined_points = 0;
};

/// Grid sup of |E_j| over beta: uniform grid of size L plus local refinement
/// near every B/Q with Q < 2^{eps j}.
SupEstimate sup_Ej_on_grid(double alpha, int64_t j, const ArcParams& params,
                           int64_t L, const QuadratureSettings& quad = {});

/// Generic sup over a uniform grid plus refinement near the given centers
/// with the given step and half-width in steps.
SupEstimate sup_on_grid(const std::function<cplx(double)>& evaluator,
                        const std::vector<cplx>& grid_values, int64_t L,
                        const std::vector<double>& refine_centers,
                        double refine_step, int64_t refine_halfwidth);

}  // namespace oqh
