#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace oqh {

using cplx = std::complex<double>;
using std::int64_t;

/// Discrete interval Z ∩ [a,b]; its length is the cardinality b-a+1.
struct DiscreteInterval {
  int64_t a = 0;
  int64_t b = 0;

  DiscreteInterval() = default;
  DiscreteInterval(int64_t a_, int64_t b_) : a(a_), b(b_) {
    if (b < a) throw std::invalid_argument("DiscreteInterval: b < a");
  }

  int64_t length() const { return b - a + 1; }
  bool contains(int64_t x) const { return a <= x && x <= b; }
  bool contains(const DiscreteInterval& o) const { return a <= o.a && o.b <= b; }
};

/// Computation domain for operator outputs and weight experiments.
struct Window {
  DiscreteInterval interval;

  Window() = default;
  explicit Window(DiscreteInterval i) : interval(i) {}
  Window(int64_t a, int64_t b) : interval(a, b) {}

  int64_t length() const { return interval.length(); }
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oqh
