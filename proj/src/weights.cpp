#include "oqh/weights.hpp"

#include <cmath>
#include <functional>

#include "oqh/fourier.hpp"

namespace oqh {

Weight::Weight(Window w, Eigen::ArrayXd v) : window(w), values(std::move(v)) {
  if (values.size() != window.length())
    throw StructuralError("Weight: values do not match window length");
  if (!(values > 0.0).all() || !values.isFinite().all())
    throw StructuralError("Weight: values must be strictly positive and finite");
}

Weight Weight::inverse() const { return Weight(window, values.inverse()); }

Weight power_weight(const Window& w, double exponent) {
  const int64_t a = w.interval.a, len = w.length();
  const double mid = static_cast<double>(a) + static_cast<double>(len - 1) / 2.0;
  Eigen::ArrayXd v(len);
  for (int64_t i = 0; i < len; ++i)
    v[i] = std::pow(1.0 + std::abs(static_cast<double>(a + i) - mid), exponent);
  v /= v.mean();
  return Weight(w, std::move(v));
}

Weight step_weight(const Window& w, double left, double right) {
  Eigen::ArrayXd v(w.length());
  int64_t half = w.length() / 2;
  v.head(half) = left;
  v.tail(w.length() - half) = right;
  return Weight(w, std::move(v));
}

namespace {

// Visit the recursive halving family of the window, root included.
void for_each_dyadic(const DiscreteInterval& I,
                     const std::function<void(const DiscreteInterval&)>& fn) {
  fn(I);
  if (I.length() == 1) return;
  int64_t mid = I.a + I.length() / 2 - 1;
  for_each_dyadic({I.a, mid}, fn);
  for_each_dyadic({mid + 1, I.b}, fn);
}

double avg_pow(const Weight& w, const DiscreteInterval& I, double r) {
  double acc = 0.0;
  for (int64_t n = I.a; n <= I.b; ++n) acc += std::pow(w.at(n), r);
  return std::pow(acc / static_cast<double>(I.length()), 1.0 / r);
}

}  // namespace

double a2_characteristic(const Weight& w) {
  double best = 1.0;
  Weight inv = w.inverse();
  for_each_dyadic(w.window.interval, [&](const DiscreteInterval& I) {
    double p = avg_pow(w, I, 1.0) * avg_pow(inv, I, 1.0);
    best = std::max(best, p);
  });
  return best;
}

double rh_characteristic(const Weight& w, double r) {
  if (r <= 1.0) throw ParameterError("rh_characteristic: r must be > 1");
  double best = 1.0;
  for_each_dyadic(w.window.interval, [&](const DiscreteInterval& I) {
    best = std::max(best, avg_pow(w, I, r) / avg_pow(w, I, 1.0));
  });
  return best;
}

double weighted_norm_ratio(double alpha, const Signal& f, const Weight& w) {
  if (f.empty()) throw StructuralError("weighted_norm_ratio: zero input");
  if (!w.window.interval.contains(*f.support_hull()))
    throw ParameterError("weighted_norm_ratio: window does not cover supp f");
  Signal hf = apply_halpha(f, alpha, w.window);
  double num = 0.0, den = 0.0;
  for (int64_t n = w.window.interval.a; n <= w.window.interval.b; ++n) {
    num += std::norm(hf(n)) * w.at(n);
    den += std::norm(f(n)) * w.at(n);
  }
  return std::sqrt(num / den);
}

}  // namespace oqh
