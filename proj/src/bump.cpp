#include "oqh/bump.hpp"

#include <cmath>

namespace oqh {

namespace {
double decay(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = decay(x), b = decay(1.0 - x);
  return a / (a + b);
}

double phi_bump(double t) { return smooth_step(2.0 * (1.0 - std::abs(t))); }

double psi(double t) {
  if (t == 0.0) return 0.0;
  double a = std::abs(t);
  if (a <= 0.25 || a >= 1.0) return 0.0;
  return (phi_bump(t) - phi_bump(2.0 * t)) / t;
}

double psi_j(std::int64_t j, double t) {
  double scale = std::exp2(-static_cast<double>(j));
  return scale * psi(scale * t);
}

double chi(double t) { return phi_bump(5.0 * t); }

double chi_s(std::int64_t s, double t) {
  t = t - std::nearbyint(t);  // torus representative
  return chi(std::pow(10.0, static_cast<double>(s)) * t);
}

}  // namespace oqh
