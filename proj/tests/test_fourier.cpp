#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oqh/fourier.hpp"

using namespace oqh;

TEST_CASE("unit phase") {
  CHECK(std::abs(unit_phase(0.25) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(unit_phase(0.5) + cplx(1, 0)) < 1e-15);
}

TEST_CASE("frac_mul matches an exact integer reduction at large products") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    double a = unif(rng);
    double m = std::floor(unif(rng) * 4.0e7);
    double mine = frac_mul(a, m * m);

    // a = n 2^{-k} with n a 53-bit integer, so a m^2 = (n m^2) 2^{-k} exactly
    int e = 0;
    double mant = std::frexp(a, &e);
    int k = 53 - e;
    auto n = static_cast<unsigned __int128>(std::ldexp(mant, 53));
    auto m2 = static_cast<unsigned __int128>(m * m);
    unsigned __int128 prod = n * m2;
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << k) - 1;
    double ref = std::ldexp(static_cast<double>(prod & mask), -k);  // frac in [0,1)

    double diff = std::abs(ref - (mine - std::floor(mine)));
    diff = std::min(diff, std::abs(1.0 - diff));  // same torus point
    CHECK(diff < 1e-12);
  }
}

TEST_CASE("quad_phase symmetry") {
  for (int64_t m : {1, 5, 1023, 65535}) {
    cplx a = quad_phase(0.3, 0.41, m);
    CHECK(std::abs(std::abs(a) - 1.0) < 1e-14);
    // e(alpha m^2) even in m, e(-beta m) conjugates under m -> -m at alpha=0
    cplx b = quad_phase(0.0, 0.41, m);
    cplx c = quad_phase(0.0, 0.41, -m);
    CHECK(std::abs(b - std::conj(c)) < 1e-14);
  }
}

TEST_CASE("dft of deltas") {
  auto ones = dft_on_grid(Signal::delta(0), 8);
  for (const cplx& v : ones) CHECK(std::abs(v - cplx(1.0)) < 1e-12);

  auto g = dft_on_grid(Signal::delta(1), 4);
  CHECK(std::abs(g[0] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(g[1] - cplx(0, -1)) < 1e-12);
  CHECK(std::abs(g[2] - cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(g[3] - cplx(0, 1)) < 1e-12);
}

TEST_CASE("dft grid too small throws") {
  CHECK_THROWS_AS(dft_on_grid(Signal::indicator(0, 9), 5), ParameterError);
}

TEST_CASE("grid Plancherel") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  Eigen::ArrayXcd v(33);
  for (int i = 0; i < 33; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  Signal f(-4, v);
  int64_t L = 66;
  auto fhat = dft_on_grid(f, L);
  double lhs = 0.0;
  for (const cplx& x : fhat) lhs += std::norm(x);
  double n2 = f.norm2();
  CHECK(lhs / static_cast<double>(L) == doctest::Approx(n2 * n2).epsilon(1e-10));
}

TEST_CASE("fft round trip") {
  std::vector<cplx> x = {cplx(1, 2), cplx(-3, 0), cplx(0, 5), cplx(2, 2), cplx(7, -1)};
  auto y = fft_inverse(fft_forward(x));
  for (size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - x[i]) < 1e-12);
}

TEST_CASE("halpha on a point mass") {
  double alpha = 0.3;
  Signal out = apply_halpha(Signal::delta(0), alpha, Window(-20, 20));
  CHECK(std::abs(out(0)) < 1e-14);
  for (int64_t n : {1, 2, 7, -3, -20}) {
    cplx expect = quad_phase(alpha, 0.0, n) / static_cast<double>(n);
    CHECK(std::abs(out(n) - expect) < 1e-12);
  }
}

TEST_CASE("halpha two-point oracle at alpha = 0") {
  Signal f = Signal::delta(0) + Signal::delta(1);
  Signal out = apply_halpha(f, 0.0, Window(-5, 6), ConvMethod::direct);
  CHECK(std::abs(out(0) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(out(1) - cplx(1.0)) < 1e-14);
}

TEST_CASE("direct and fft paths agree") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  Eigen::ArrayXcd v(24);
  for (int i = 0; i < 24; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  Signal f(-7, v);
  Window w(f.support_min() - 48, f.support_max() + 48);
  Signal a = apply_halpha(f, 0.3, w, ConvMethod::direct);
  Signal b = apply_halpha(f, 0.3, w, ConvMethod::fft);
  double worst = 0.0;
  for (int64_t n = w.interval.a; n <= w.interval.b; ++n)
    worst = std::max(worst, std::abs(a(n) - b(n)));
  CHECK(worst < 1e-10);
}

TEST_CASE("halpha is linear") {
  Signal f = Signal::delta(0, cplx(1, 1));
  Signal g = Signal::delta(4, 2.0);
  Window w(-10, 14);
  Signal lhs = apply_halpha(f + g, 0.7, w);
  Signal rhs = apply_halpha(f, 0.7, w) + apply_halpha(g, 0.7, w);
  for (int64_t n = w.interval.a; n <= w.interval.b; ++n)
    CHECK(std::abs(lhs(n) - rhs(n)) < 1e-12);
}

TEST_CASE("halpha window must cover the support") {
  CHECK_THROWS_AS(apply_halpha(Signal::delta(5), 0.1, Window(0, 3)), ParameterError);
}

TEST_CASE("default window expands by the diameter factor") {
  Window w = default_window(Signal::indicator(0, 9), 4);
  CHECK(w.interval.a == -40);
  CHECK(w.interval.b == 49);
}
