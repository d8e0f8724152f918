#pragma once

#include <Eigen/Core>

#include "oqh/signal.hpp"

namespace oqh {

/// Strictly positive weight on a window.
struct Weight {
  Window window;
  Eigen::ArrayXd values;  // indexed by n - window.interval.a

  Weight() = default;
  Weight(Window w, Eigen::ArrayXd v);

  double at(int64_t n) const { return values[n - window.interval.a]; }
  Weight inverse() const;
};

/// (1 + |n - mid|)^exponent on the window, renormalized to mean 1.
Weight power_weight(const Window& w, double exponent);

/// Weight from a step profile: `left` on the left half, `right` on the right.
Weight step_weight(const Window& w, double left, double right);

/// max over dyadic subintervals of <w>_I <w^{-1}>_I.
double a2_characteristic(const Weight& w);

/// max over dyadic subintervals of <w>_{I,r} / <w>_{I,1}; r > 1.
double rh_characteristic(const Weight& w, double r);

/// ||H^alpha f||_{l^2(w)} / ||f||_{l^2(w)} over the weight's window.
double weighted_norm_ratio(double alpha, const Signal& f, const Weight& w);

}  // namespace oqh
