#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oqh/fourier.hpp"
#include "oqh/sparse.hpp"

using namespace oqh;

namespace {

SparseEntry entry(int64_t a, int64_t b, std::vector<int64_t> pts) {
  SparseEntry e;
  e.interval = {a, b};
  e.witness.assign(static_cast<size_t>(b - a + 1), false);
  for (int64_t p : pts) e.witness[static_cast<size_t>(p - a)] = true;
  return e;
}

SparseEntry full_entry(int64_t a, int64_t b) {
  SparseEntry e;
  e.interval = {a, b};
  e.witness.assign(static_cast<size_t>(b - a + 1), true);
  return e;
}

}  // namespace

TEST_CASE("verify: dyadic tower") {
  SparseCollection c;
  for (int64_t k = 1; k <= 10; ++k) {
    std::vector<int64_t> pts;
    for (int64_t x = int64_t{1} << (k - 1); x < (int64_t{1} << k); ++x) pts.push_back(x);
    c.entries.push_back(entry(0, (int64_t{1} << k) - 1, pts));
  }
  c.rho = 0.49;
  CHECK(verify_sparse(c).ok);
  c.rho = 0.5;  // |E| = |S|/2 exactly, strict inequality fails
  CHECK(!verify_sparse(c).ok);
}

TEST_CASE("verify: three identical intervals with disjoint thirds") {
  SparseCollection c;
  c.entries.push_back(entry(0, 8, {0, 1, 2}));
  c.entries.push_back(entry(0, 8, {3, 4, 5}));
  c.entries.push_back(entry(0, 8, {6, 7, 8}));
  c.rho = 1.0 / 3.0;
  CHECK(!verify_sparse(c).ok);  // |E_S| = 3 = rho |S|, not strictly above
  c.rho = 0.33;
  CHECK(verify_sparse(c).ok);
}

TEST_CASE("verify: boundary semantics at rho = 1") {
  SparseCollection c;
  c.entries.push_back(full_entry(0, 8));
  c.rho = 1.0;
  CHECK(!verify_sparse(c).ok);
  c.rho = 0.99;
  CHECK(verify_sparse(c).ok);
}

TEST_CASE("verify: overlap cap and bitset mismatch") {
  SparseCollection c;
  c.rho = 0.5;
  c.entries.push_back(full_entry(0, 3));
  c.entries.push_back(full_entry(0, 3));
  c.entries.push_back(full_entry(0, 3));  // point 0 in 3 > ceil(1/rho) = 2 sets
  auto rep = verify_sparse(c);
  CHECK(!rep.ok);
  CHECK(rep.diagnostic.find("point") != std::string::npos);

  SparseCollection bad;
  bad.entries.push_back(full_entry(0, 3));
  bad.entries[0].witness.push_back(true);
  CHECK_THROWS_AS(verify_sparse(bad), StructuralError);
}

TEST_CASE("sparse form values") {
  SparseFormParams p11{1.0, 1.0};
  SparseCollection a;
  a.entries.push_back(full_entry(0, 3));
  Signal chi = Signal::indicator(0, 3);
  CHECK(eval_sparse_form(a, chi, chi, {1.7, 1.2}) == doctest::Approx(4.0));

  SparseCollection b;
  b.entries.push_back(full_entry(0, 0));
  CHECK(eval_sparse_form(b, Signal::delta(0), Signal::delta(0), p11) == doctest::Approx(1.0));

  SparseCollection c;
  c.entries.push_back(full_entry(0, 1));
  c.entries.push_back(full_entry(0, 3));
  CHECK(eval_sparse_form(c, Signal::delta(0), Signal::delta(0), p11) == doctest::Approx(0.75));
}

TEST_CASE("sparse form is monotone under pointwise increase") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::ArrayXcd v(32), w(32);
  for (int i = 0; i < 32; ++i) {
    v[i] = unif(rng);
    w[i] = v[i].real() + unif(rng);
  }
  Signal f(0, v), fbig(0, w), g = Signal::indicator(0, 31);
  SparseCollection c = build_universal_sparse(f, g, {1.5, 1.5});
  CHECK(eval_sparse_form(c, f, g, {1.5, 1.5}) <=
        eval_sparse_form(c, fbig, g, {1.5, 1.5}));
}

TEST_CASE("universal construction on flat input") {
  Signal chi = Signal::indicator(0, 31);
  auto c = build_universal_sparse(chi, chi, {1.0, 1.0});
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].interval.a == 0);
  CHECK(c.entries[0].interval.b == 31);
  CHECK(c.entries[0].witness_count() == 32);
  CHECK(verify_sparse(c).ok);
}

TEST_CASE("universal construction descends toward a point mass") {
  auto c = build_universal_sparse(Signal::delta(0), Signal::indicator(0, 15), {1.0, 1.0});
  CHECK(c.entries.size() >= 2);
  CHECK(c.entries[0].interval.length() == 16);
  // the chain ends in a short interval containing the spike
  const auto& last = c.entries.back().interval;
  CHECK(last.contains(0));
  CHECK(last.length() <= 2);
  CHECK(verify_sparse(c).ok);
}

TEST_CASE("universal construction is 1/2-sparse on random ensembles") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Eigen::ArrayXcd v(64), w(64);
    for (int i = 0; i < 64; ++i) {
      v[i] = unif(rng) < 0.5 ? -1.0 : 1.0;
      w[i] = unif(rng) < 0.2 ? unif(rng) * 10.0 : 0.1;
    }
    auto c = build_universal_sparse(Signal(0, v), Signal(0, w), {1.0, 1.0});
    CHECK(verify_sparse(c).ok);
  }
  CHECK_THROWS_AS(build_universal_sparse(Signal::zero(), Signal::zero(), {1.0, 1.0}),
                  StructuralError);
}

TEST_CASE("maximal function") {
  Signal m = mhl(Signal::delta(0), Window(-6, 6));
  for (int64_t n = -6; n <= 6; ++n)
    CHECK(std::abs(m(n)) == doctest::Approx(1.0 / (2.0 * std::abs(n) + 1.0)));

  Signal ones = mhl(Signal::indicator(0, 20), Window(5, 15));
  for (int64_t n = 5; n <= 15; ++n) CHECK(std::abs(ones(n)) == doctest::Approx(1.0));

  Signal two = mhl(Signal::indicator(0, 1), Window(3, 3));
  CHECK(std::abs(two(3)) == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("sparse ratio estimate") {
  auto ident = [](const Signal& h) { return h; };
  double r = estimate_sparse_ratio(ident, Signal::delta(0), Signal::delta(0), {1.0, 1.0});
  CHECK(r <= 1.0 + 1e-12);

  CHECK_THROWS_AS(
      estimate_sparse_ratio(ident, Signal::delta(0), Signal::zero(), {1.0, 1.0}),
      StructuralError);
}

TEST_CASE("discrete Hilbert transform has bounded sparse ratio") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Eigen::ArrayXcd v(256), w(256);
    for (int i = 0; i < 256; ++i) {
      v[i] = unif(rng) < 0.5 ? -1.0 : 1.0;
      w[i] = unif(rng) < 0.5 ? -1.0 : 1.0;
    }
    Signal f(0, v), g(0, w);
    auto h0 = [](const Signal& h) { return apply_halpha(h, 0.0, default_window(h, 4)); };
    worst = std::max(worst, estimate_sparse_ratio(h0, f, g, {1.0, 1.0}));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst > 0.0);
  CHECK(worst < 100.0);
}

TEST_CASE("truncated kernel estimate") {
  CHECK(truncated_kernel_estimate(Signal::delta(0), {2.0, 2.0}) == doctest::Approx(1.0));

  Signal k = Signal::delta(1) - Signal::delta(-1);
  CHECK(truncated_kernel_estimate(k, {2.0, 2.0}) == doctest::Approx(2.0).epsilon(1e-3));

  CHECK_THROWS_AS(truncated_kernel_estimate(k, {1.5, 1.7}), ParameterError);
  CHECK_THROWS_AS(truncated_kernel_estimate(k, {2.5, 2.5}), ParameterError);
}

TEST_CASE("random collections are valid") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 25; ++t) {
    auto c = random_sparse_collection(DiscreteInterval(0, 127), rng);
    CHECK(!c.entries.empty());
    CHECK(verify_sparse(c).ok);
  }
}
