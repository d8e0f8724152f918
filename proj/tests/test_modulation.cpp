#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oqh/bump.hpp"
#include "oqh/fourier.hpp"
#include "oqh/modulation.hpp"

using namespace oqh;

namespace {

Signal random_pm1(int64_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::ArrayXcd v(len);
  for (int64_t i = 0; i < len; ++i) v[i] = unif(rng) < 0.5 ? -1.0 : 1.0;
  return Signal(0, v);
}

}  // namespace

TEST_CASE("grid sizing") {
  Signal f = Signal::indicator(0, 99);
  CHECK(modulation_grid_size(f, 1, 0.5) % 2 == 0);
  CHECK(modulation_grid_size(f, 1, 0.5) >= 1000);
  CHECK(modulation_grid_size(f, 2, 1.0 / 3.0) % 3 == 0);
  CHECK_THROWS_AS(modulation_projection(f, 1, 0.5, 500), ParameterError);
  CHECK_THROWS_AS(modulation_projection(f, 1, 0.5, 1001), ParameterError);  // not a multiple of 2
}

TEST_CASE("no alpha_s means an empty family") {
  double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  Signal f = Signal::indicator(0, 49);
  auto fam = modulation_projection(f, 2, golden, 100000);
  CHECK(!fam.alpha_s);
  CHECK(fam.residues.empty());
  CHECK(total_component_norm2(fam) == 0.0);
}

TEST_CASE("component count stays within the level bound") {
  std::mt19937_64 rng(1);
  for (int64_t s : {int64_t{1}, int64_t{2}, int64_t{3}}) {
    double alpha = 1.0 / static_cast<double>((int64_t{1} << s)) + 1e-5;
    Signal f = random_pm1(64, rng);
    int64_t L = modulation_grid_size(f, s, alpha);
    auto fam = modulation_projection(f, s, alpha, L);
    REQUIRE(fam.alpha_s);
    CHECK(static_cast<int64_t>(fam.residues.size()) <= (int64_t{1} << (2 * s)));
  }
}

TEST_CASE("frequency windows of distinct residues are disjoint") {
  const int64_t s = 1, L = 1000;
  auto fam = modulation_projection(Signal::indicator(0, 30), s, 0.5, L);
  REQUIRE(fam.alpha_s);
  const int64_t Q = fam.alpha_s->den;
  for (int64_t B = 0; B < Q; ++B)
    for (int64_t Bp = B + 1; Bp < Q; ++Bp)
      for (int64_t k = 0; k < L; ++k) {
        double beta = static_cast<double>(k) / L;
        double a = chi_s(s, beta - static_cast<double>(B) / Q);
        double b = chi_s(s, beta - static_cast<double>(Bp) / Q);
        CHECK(a * b == 0.0);
      }
}

TEST_CASE("Bessel inequality on random input") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    Signal f = random_pm1(256, rng);
    int64_t L = modulation_grid_size(f, 1, 0.5);
    auto fam = modulation_projection(f, 1, 0.5, L);
    double n2 = f.norm2();
    CHECK(total_component_norm2(fam) <= n2 * n2 + 1e-10);
  }
}

TEST_CASE("Bessel equality for a plateau-band signal") {
  // f^ = indicator of the chi_1 plateau |beta - 1/2| <= 0.01, where the
  // cutoff is identically 1: no mass escapes the projection.
  const int64_t L = 1000;
  std::vector<cplx> fhat(L, cplx(0.0));
  for (int64_t k = 490; k <= 510; ++k) fhat[static_cast<size_t>(k)] = 1.0;
  auto vals = fft_inverse(fhat);
  Eigen::ArrayXcd v = Eigen::Map<const Eigen::ArrayXcd>(vals.data(), L);
  Signal f(0, v);
  auto fam = modulation_projection(f, 1, 0.5, L);
  REQUIRE(fam.alpha_s);
  double n2 = f.norm2();
  CHECK(total_component_norm2(fam) == doctest::Approx(n2 * n2).epsilon(1e-10));

  int nonzero = 0;
  for (double c : fam.component_norm2)
    if (c > 1e-12) ++nonzero;
  CHECK(nonzero == 1);
}

TEST_CASE("transfer identity") {
  std::mt19937_64 rng(31);
  Signal f = random_pm1(256, rng);
  Signal g = random_pm1(256, rng);
  ArcParams p;
  p.epsilon = 0.15;

  SUBCASE("no alpha_s: both sides vanish") {
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    auto rep = major_transfer_check(f, g, 1, golden, p, 11, 1000);
    CHECK(rep.lhs == cplx(0.0));
    CHECK(rep.rhs == cplx(0.0));
    CHECK(rep.rel_discrepancy == 0.0);
  }

  SUBCASE("s = 1, alpha = 1/2") {
    auto rep = major_transfer_check(f, g, 1, 0.5, p, 11, 1000);
    CHECK(std::abs(rep.lhs) > 0.0);
    CHECK(rep.rel_discrepancy <= 1e-6);
    CHECK(rep.lhs_abs <= rep.gauss_weighted_bound + 1e-12);

    auto rep2 = major_transfer_check(cplx(2.0) * f, g, 1, 0.5, p, 11, 1000);
    CHECK(std::abs(rep2.lhs - cplx(2.0) * rep.lhs) < 1e-12);
    CHECK(std::abs(rep2.rhs - cplx(2.0) * rep.rhs) < 1e-12);
  }
}
