#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "oqh/types.hpp"

namespace oqh {

/// Finitely supported complex-valued function on Z. Stored as an offset
/// (smallest support point) plus a dense run of values; entries outside the
/// stored range are exactly zero. The stored range is trimmed so the first
/// and last entries are nonzero.
class Signal {
 public:
  Signal() = default;
  Signal(int64_t offset, Eigen::ArrayXcd values);

  static Signal delta(int64_t n, cplx value = 1.0);
  /// Indicator of the discrete interval [a,b].
  static Signal indicator(int64_t a, int64_t b);
  static Signal zero() { return Signal(); }

  bool empty() const { return values_.size() == 0; }
  int64_t offset() const { return offset_; }
  int64_t support_min() const { return offset_; }
  int64_t support_max() const { return offset_ + values_.size() - 1; }
  /// Hull of the support as an interval; empty signal has no hull.
  std::optional<DiscreteInterval> support_hull() const;

  const Eigen::ArrayXcd& values() const { return values_; }

  cplx operator()(int64_t n) const {
    int64_t k = n - offset_;
    if (k < 0 || k >= values_.size()) return 0.0;
    return values_[k];
  }

  Signal conjugate() const;
  Signal& operator*=(cplx c);
  friend Signal operator*(cplx c, Signal f) { f *= c; return f; }
  friend Signal operator+(const Signal& f, const Signal& g);
  friend Signal operator-(const Signal& f, const Signal& g);

  double norm2() const;        // ell^2 norm
  double sup_abs() const;

  std::string to_json() const;
  static Signal from_json(const std::string& text);

 private:
  void trim();

  int64_t offset_ = 0;
  Eigen::ArrayXcd values_;
};

/// sum_n f(n) conj(g(n)); conjugate-linear in the second argument.
cplx inner_product(const Signal& f, const Signal& g);

/// [ |I|^{-1} sum_{x in I} |f(x)|^r ]^{1/r}, r >= 1.
double lr_average(const Signal& f, const DiscreteInterval& I, double r);

}  // namespace oqh
