#include "oqh/multiplier.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "oqh/bump.hpp"
#include "oqh/fourier.hpp"

namespace oqh {

namespace {

struct GLRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
GLRule make_gl_rule(int n) {
  GLRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GLRule& gl_rule(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
  return it->second;
}

// One-scale oscillatory shell integral: V(X,Y) = int over 1/4 <= |u| <= 1 of
// e(X u^2 - Y u) psi(u) du. U_j(x,y) = V(x 4^j, y 2^j) after u = t/2^j.
cplx shell_integral(double X, double Y, int64_t panels, int nodes) {
  const GLRule& rule = gl_rule(nodes);
  cplx acc = 0.0;
  const double lo = 0.25, hi = 1.0;
  const double h = (hi - lo) / static_cast<double>(panels);
  for (int64_t p = 0; p < panels; ++p) {
    double a = lo + h * static_cast<double>(p);
    double c = a + 0.5 * h, r = 0.5 * h;
    cplx sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      double u = c + r * rule.nodes[i];
      double w = rule.weights[i] * r;
      double pu = psi(u);
      if (pu != 0.0) {
        // positive side e(Xu^2 - Yu) psi(u), negative side -e(Xu^2 + Yu) psi(u)
        sum += w * pu * (unit_phase(X * u * u - Y * u) - unit_phase(X * u * u + Y * u));
      }
    }
    acc += sum;
  }
  return acc;
}

int64_t mod_idx(int64_t m, int64_t L) { return ((m % L) + L) % L; }

}  // namespace

cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b,
                  int64_t panels, int nodes_per_panel) {
  const GLRule& rule = gl_rule(nodes_per_panel);
  const double h = (b - a) / static_cast<double>(panels);
  cplx acc = 0.0;
  for (int64_t p = 0; p < panels; ++p) {
    double c = a + h * (static_cast<double>(p) + 0.5), r = 0.5 * h;
    for (int i = 0; i < nodes_per_panel; ++i)
      acc += rule.weights[i] * r * f(c + r * rule.nodes[i]);
  }
  return acc;
}

cplx eval_Mj(double alpha, double beta, int64_t j) {
  if (j < 0) throw ParameterError("eval_Mj: j must be >= 0");
  if (j > 26) throw ResourceError("eval_Mj: j > 26 exceeds the summation cap");
  const int64_t mhi = int64_t{1} << j;
  const int64_t mlo = std::max<int64_t>(1, mhi >> 2);
  cplx acc = 0.0;
  for (int64_t m = mlo; m <= mhi; ++m) {
    double pj = psi_j(j, static_cast<double>(m));
    if (pj == 0.0) continue;
    acc += pj * (quad_phase(alpha, beta, m) - quad_phase(alpha, -beta, m));
  }
  return acc;
}

cplx eval_M_truncated(double alpha, double beta, int64_t N) {
  if (N < 1) throw ParameterError("eval_M_truncated: N must be >= 1");
  if (N > (int64_t{1} << 26)) throw ResourceError("eval_M_truncated: N > 2^26");
  cplx acc = 0.0;
  for (int64_t m = 1; m <= N; ++m)
    acc += (quad_phase(alpha, beta, m) - quad_phase(alpha, -beta, m)) /
           static_cast<double>(m);
  return acc;
}

cplx eval_Mj_near(const ReducedFraction& aq, double da,
                  const ReducedFraction& bq, double db, int64_t j) {
  if (j < 0) throw ParameterError("eval_Mj_near: j must be >= 0");
  if (j > 26) throw ResourceError("eval_Mj_near: j > 26 exceeds the summation cap");
  const int64_t Q = aq.den, Qb = bq.den;
  const int64_t mhi = int64_t{1} << j;
  cplx acc = 0.0;
  for (int64_t sign : {int64_t{1}, int64_t{-1}}) {
    for (int64_t mm = std::max<int64_t>(1, mhi >> 2); mm <= mhi; ++mm) {
      const int64_t m = sign * mm;
      const double pj = psi_j(j, static_cast<double>(m));
      if (pj == 0.0) continue;
      const int64_t r = ((m % Q) + Q) % Q;
      const int64_t rb = ((m % Qb) + Qb) % Qb;
      const double rat =
          static_cast<double>(aq.num * (r * r % Q) % Q) / static_cast<double>(Q) -
          static_cast<double>(bq.num * rb % Qb) / static_cast<double>(Qb);
      const double md = static_cast<double>(m);
      acc += pj * unit_phase(rat + frac_mul(da, md * md) - frac_mul(db, md));
    }
  }
  return acc;
}

cplx eval_Uj(double x, double y, int64_t j, const QuadratureSettings& quad) {
  const double X = x * std::exp2(2.0 * static_cast<double>(j));
  const double Y = y * std::exp2(static_cast<double>(j));
  int64_t panels = static_cast<int64_t>(
      std::ceil(quad.panels_per_osc * (1.0 + std::abs(X) + std::abs(Y))));
  cplx coarse = shell_integral(X, Y, panels, quad.nodes_per_panel);
  cplx fine = shell_integral(X, Y, 2 * panels, quad.nodes_per_panel);
  if (std::abs(coarse - fine) <= quad.tolerance) return fine;
  cplx finer = shell_integral(X, Y, 4 * panels, quad.nodes_per_panel);
  if (std::abs(fine - finer) <= quad.tolerance) return finer;
  throw NumericError("eval_Uj: quadrature did not self-verify at X=" +
                     std::to_string(X) + " Y=" + std::to_string(Y) +
                     " panels=" + std::to_string(4 * panels));
}

cplx eval_Us(double x, double y, int64_t jmin, int64_t jmax,
             const QuadratureSettings& quad) {
  cplx acc = 0.0;
  for (int64_t j = jmin; j <= jmax; ++j) acc += eval_Uj(x, y, j, quad);
  return acc;
}

namespace {

double wrap_half(double t) { return t - std::nearbyint(t); }

}  // namespace

cplx eval_Ljs(double alpha, double beta, int64_t j, int64_t s,
              const QuadratureSettings& quad) {
  auto as = find_alpha_s(alpha, s);
  if (!as) return 0.0;
  const double dx = wrap_half(alpha - as->value());
  const double cx = chi_s(s, dx);
  if (cx == 0.0) return 0.0;
  cplx acc = 0.0;
  for (int64_t B : coprime_residues(as->den)) {
    const double dy = wrap_half(beta - static_cast<double>(B) / static_cast<double>(as->den));
    const double cy = chi_s(s, dy);
    if (cy == 0.0) continue;
    acc += gauss_sum(*as, B) * eval_Uj(dx, dy, j, quad) * cx * cy;
  }
  return acc;
}

cplx eval_Lj(double alpha, double beta, int64_t j, const ArcParams& params,
             const QuadratureSettings& quad) {
  cplx acc = 0.0;
  for (int64_t s = 1; s <= params.level_max(); ++s)
    acc += eval_Ljs(alpha, beta, j, s, quad);
  return acc;
}

cplx eval_Ej(double alpha, double beta, int64_t j, const ArcParams& params,
             const QuadratureSettings& quad) {
  return eval_Mj(alpha, beta, j) - eval_Lj(alpha, beta, j, params, quad);
}

std::vector<cplx> Mj_on_grid(double alpha, int64_t j, int64_t L) {
  if (j > 26) throw ResourceError("Mj_on_grid: j > 26");
  if (L < (int64_t{2} << j))
    throw ParameterError("Mj_on_grid: grid too small for the kernel support");
  std::vector<cplx> c(static_cast<size_t>(L), cplx(0.0));
  const int64_t mhi = int64_t{1} << j;
  for (int64_t m = std::max<int64_t>(1, mhi >> 2); m <= mhi; ++m) {
    double pj = psi_j(j, static_cast<double>(m));
    if (pj == 0.0) continue;
    // psi_j(-m) = -psi_j(m), e(alpha m^2) is even in m
    c[static_cast<size_t>(mod_idx(m, L))] += pj * quad_phase(alpha, 0.0, m);
    c[static_cast<size_t>(mod_idx(-m, L))] -= pj * quad_phase(alpha, 0.0, m);
  }
  return fft_forward(c);
}

std::vector<cplx> Lj_on_grid(double alpha, int64_t j, const ArcParams& params,
                             int64_t L, const QuadratureSettings& quad) {
  std::vector<cplx> grid(static_cast<size_t>(L), cplx(0.0));
  for (int64_t s = 1; s <= params.level_max(); ++s) {
    auto as = find_alpha_s(alpha, s);
    if (!as) continue;
    const double dx = wrap_half(alpha - as->value());
    const double cx = chi_s(s, dx);
    if (cx == 0.0) continue;
    const double radius = chi_support_radius(s);
    for (int64_t B : coprime_residues(as->den)) {
      const cplx S = gauss_sum(*as, B);
      const double center = static_cast<double>(B) / static_cast<double>(as->den);
      const int64_t klo = static_cast<int64_t>(std::ceil((center - radius) * L));
      const int64_t khi = static_cast<int64_t>(std::floor((center + radius) * L));
      for (int64_t k = klo; k <= khi; ++k) {
        const double dy = static_cast<double>(k) / static_cast<double>(L) - center;
        const double cy = chi_s(s, dy);
        if (cy == 0.0) continue;
        grid[static_cast<size_t>(mod_idx(k, L))] +=
            S * eval_Uj(dx, dy, j, quad) * cx * cy;
      }
    }
  }
  return grid;
}

std::vector<cplx> Ej_on_grid(double alpha, int64_t j, const ArcParams& params,
                             int64_t L, const QuadratureSettings& quad) {
  auto m = Mj_on_grid(alpha, j, L);
  auto l = Lj_on_grid(alpha, j, params, L, quad);
  for (size_t k = 0; k < m.size(); ++k) m[k] -= l[k];
  return m;
}

KernelEj kernel_Ej(double alpha, int64_t j, const ArcParams& params, int64_t L,
                   const QuadratureSettings& quad) {
  if (L < (int64_t{1} << (j + 3)))
    throw ParameterError("kernel_Ej: L must be at least 2^{j+3}");
  auto lgrid = Lj_on_grid(alpha, j, params, L, quad);
  auto lker = fft_inverse(lgrid);

  Eigen::ArrayXcd v(L);
  const int64_t half = L / 2;
  for (int64_t m = -half; m < L - half; ++m) {
    cplx exact = 0.0;
    double pj = psi_j(j, static_cast<double>(m));
    if (pj != 0.0) exact = pj * quad_phase(alpha, 0.0, m);
    v[m + half] = exact - lker[static_cast<size_t>(mod_idx(m, L))];
  }
  KernelEj out;
  out.kernel = Signal(-half, std::move(v));
  double split = std::exp2(3.0 * static_cast<double>(j));
  out.split = split > 1e18 ? int64_t{1} << 62 : static_cast<int64_t>(split);
  out.far_part_empty = out.split >= half;
  return out;
}

SupEstimate sup_on_grid(const std::function<cplx(double)>& evaluator,
                        const std::vector<cplx>& grid_values, int64_t L,
                        const std::vector<double>& refine_centers,
                        double refine_step, int64_t refine_halfwidth) {
  SupEstimate est;
  est.grid = L;
  for (int64_t k = 0; k < static_cast<int64_t>(grid_values.size()); ++k) {
    double a = std::abs(grid_values[static_cast<size_t>(k)]);
    if (a > est.value) {
      est.value = a;
      est.argmax_beta = static_cast<double>(k) / static_cast<double>(L);
    }
  }
  for (double c : refine_centers) {
    for (int64_t i = -refine_halfwidth; i <= refine_halfwidth; ++i) {
      double beta = c + refine_step * static_cast<double>(i);
      double a = std::abs(evaluator(beta));
      ++est.refined_points;
      if (a > est.value) {
        est.value = a;
        est.argmax_beta = beta;
      }
    }
  }
  return est;
}

SupEstimate sup_Ej_on_grid(double alpha, int64_t j, const ArcParams& params,
                           int64_t L, const QuadratureSettings& quad) {
  auto grid = Ej_on_grid(alpha, j, params, L, quad);
  auto eval = [&](double beta) { return eval_Ej(alpha, beta, j, params, quad); };

  SupEstimate est = sup_on_grid(eval, grid, L, {}, 0.0, 0);

  // Refine near every B/Q with Q < 2^{eps j}; the step shrinks with the
  // level of Q.
  const double qlim = std::exp2(params.epsilon * static_cast<double>(j));
  for (int64_t Q = 1; static_cast<double>(Q) < qlim; ++Q) {
    int64_t s = 1;
    while ((int64_t{1} << s) < Q) ++s;
    const double step = std::pow(10.0, -static_cast<double>(s) - 2.0);
    std::vector<double> centers;
    for (int64_t B : coprime_residues(Q))
      centers.push_back(static_cast<double>(B) / static_cast<double>(Q));
    SupEstimate local = sup_on_grid(eval, {}, 1, centers, step, 20);
    est.refined_points += local.refined_points;
    if (local.value > est.value) {
      est.value = local.value;
      est.argmax_beta = local.argmax_beta;
    }
  }
  return est;
}

}  // namespace oqh
