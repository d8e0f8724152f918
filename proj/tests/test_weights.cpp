#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oqh/fourier.hpp"
#include "oqh/weights.hpp"

using namespace oqh;

TEST_CASE("weight validation") {
  Window w(0, 3);
  Eigen::ArrayXd bad(4);
  bad << 1.0, 0.0, 1.0, 1.0;
  CHECK_THROWS_AS(Weight(w, bad), StructuralError);
  CHECK_THROWS_AS(Weight(w, Eigen::ArrayXd::Ones(3)), StructuralError);
  Weight ok(w, Eigen::ArrayXd::Ones(4));
  CHECK(ok.at(2) == 1.0);
  CHECK(ok.inverse().at(2) == 1.0);
}

TEST_CASE("power weight is normalized to mean one") {
  for (double e : {0.0, 0.5, -0.5}) {
    Weight w = power_weight(Window(0, 1023), e);
    CHECK(w.values.mean() == doctest::Approx(1.0));
    CHECK((w.values > 0.0).all());
  }
  Weight flat = power_weight(Window(0, 7), 0.0);
  for (int64_t n = 0; n <= 7; ++n) CHECK(flat.at(n) == doctest::Approx(1.0));
}

TEST_CASE("step weight layout") {
  Weight w = step_weight(Window(0, 7), 2.0, 1.0);
  CHECK(w.at(0) == 2.0);
  CHECK(w.at(3) == 2.0);
  CHECK(w.at(4) == 1.0);
  CHECK(w.at(7) == 1.0);
}

TEST_CASE("a2 characteristic") {
  Weight flat(Window(0, 15), Eigen::ArrayXd::Ones(16));
  CHECK(a2_characteristic(flat) == doctest::Approx(1.0));

  Weight scaled(Window(0, 15), Eigen::ArrayXd::Constant(16, 7.3));
  CHECK(a2_characteristic(scaled) == doctest::Approx(1.0));

  Weight step = step_weight(Window(0, 15), 2.0, 1.0);
  CHECK(a2_characteristic(step) == doctest::Approx(9.0 / 8.0));

  Weight pw = power_weight(Window(0, 255), 0.5);
  CHECK(a2_characteristic(pw) >= 1.0);
}

TEST_CASE("reverse Holder characteristic") {
  Weight flat(Window(0, 31), Eigen::ArrayXd::Ones(32));
  for (double r : {1.5, 2.0, 3.0}) CHECK(rh_characteristic(flat, r) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rh_characteristic(flat, 1.0), ParameterError);

  const double M = 100.0;
  Eigen::ArrayXd spike = Eigen::ArrayXd::Ones(8);
  spike[3] = M;
  Weight w(Window(0, 7), spike);
  double lower = std::sqrt(M * M / 8.0) / ((M + 7.0) / 8.0);
  CHECK(rh_characteristic(w, 2.0) >= lower);
}

TEST_CASE("weighted ratio near pi for a low-frequency packet") {
  const int64_t n0 = 0, n1 = 255;
  Eigen::ArrayXcd v(n1 - n0 + 1);
  for (int64_t n = n0; n <= n1; ++n) {
    double env = std::exp(-std::pow((static_cast<double>(n) - 128.0) / 40.0, 2.0) / 2.0);
    v[n - n0] = env * unit_phase(0.01 * static_cast<double>(n));
  }
  Signal f(n0, v);
  Window big(-2048, 2303);
  Weight flat(big, Eigen::ArrayXd::Ones(big.length()));
  double ratio = weighted_norm_ratio(0.0, f, flat);
  CHECK(ratio <= M_PI + 0.05);
  CHECK(ratio >= M_PI - 0.5);
}

TEST_CASE("weighted ratio is invariant under weight scaling") {
  Signal f = Signal::delta(0) + Signal::delta(3, cplx(0, 1));
  Window w(-64, 67);
  Weight a = power_weight(w, 0.5);
  Weight b(w, 2.0 * a.values);
  double ra = weighted_norm_ratio(0.3, f, a);
  CHECK(ra == doctest::Approx(weighted_norm_ratio(0.3, f, b)));
  CHECK(ra > 0.0);
}

TEST_CASE("weighted ratio rejects bad input") {
  Window w(0, 15);
  Weight flat(w, Eigen::ArrayXd::Ones(16));
  CHECK_THROWS_AS(weighted_norm_ratio(0.1, Signal::zero(), flat), StructuralError);
  CHECK_THROWS_AS(weighted_norm_ratio(0.1, Signal::delta(20), flat), ParameterError);
}
