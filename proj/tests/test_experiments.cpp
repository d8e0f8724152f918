#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oqh/experiments.hpp"

using namespace oqh;

TEST_CASE("alpha parsing") {
  CHECK(parse_alpha("1/2") == doctest::Approx(0.5));
  CHECK(parse_alpha("2/5") == doctest::Approx(0.4));
  CHECK(parse_alpha("0.125") == doctest::Approx(0.125));
  CHECK(parse_alpha("golden-1") == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
  CHECK(parse_alpha("sqrt2-1") == doctest::Approx(std::sqrt(2.0) - 1.0));
  CHECK(parse_alpha("pi-3") == doctest::Approx(M_PI - 3.0));
  CHECK(default_alpha_set().size() == 8);
}

TEST_CASE("log slope fitting") {
  std::vector<std::pair<double, double>> exact;
  for (int x = 0; x < 6; ++x) exact.emplace_back(x, std::exp2(-x));
  auto fit = fit_log_slope(exact);
  CHECK(fit.slope == doctest::Approx(-1.0));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<std::pair<double, double>> flat = {{0, 3.0}, {1, 3.0}, {2, 3.0}};
  CHECK(fit_log_slope(flat).slope == doctest::Approx(0.0));

  // +-1% deterministic perturbation
  std::vector<std::pair<double, double>> noisy;
  for (int x = 0; x < 8; ++x)
    noisy.emplace_back(x, std::exp2(-x) * (1.0 + ((x % 2) ? 0.01 : -0.01)));
  double s = fit_log_slope(noisy).slope;
  CHECK(s >= -1.05);
  CHECK(s <= -0.95);

  CHECK_THROWS_AS(fit_log_slope({{0, 1.0}, {1, 0.5}}), ParameterError);
  CHECK_THROWS_AS(fit_log_slope({{0, 1.0}, {1, -0.5}, {2, 1.0}}), ParameterError);
}

TEST_CASE("config json round trip and mandatory seed") {
  ExperimentConfig c = default_experiment_config("minor-arc-decay");
  c.seed = 42;
  ExperimentConfig d = ExperimentConfig::from_json(c.to_json());
  CHECK(d.name == "minor-arc-decay");
  CHECK(d.eps == doctest::Approx(0.05));
  CHECK(d.seed == 42);
  CHECK(d.alpha_set == c.alpha_set);

  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"name": "bessel"})"), ParameterError);
}

TEST_CASE("registry and anchors") {
  auto names = experiment_registry();
  CHECK(names.size() == 14);
  for (const std::string& n : names) CHECK(experiment_anchor(n) != "unknown");

  ExperimentConfig bad;
  bad.name = "no-such-thing";
  try {
    run_experiment(bad);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("gauss-law") != std::string::npos);
  }
}

TEST_CASE("random signals are reproducible and well formed") {
  std::mt19937_64 a(5), b(5);
  Signal f = random_signal("rademacher", 0, 64, a);
  Signal g = random_signal("rademacher", 0, 64, b);
  for (int64_t n = 0; n < 64; ++n) {
    CHECK(f(n) == g(n));
    CHECK(std::abs(std::abs(f(n).real()) - 1.0) < 1e-15);
  }
  Signal h = random_signal("gaussian", -5, 32, a);
  CHECK(h.support_min() >= -5);
  CHECK_THROWS_AS(random_signal("cauchy", 0, 8, a), ParameterError);
}

TEST_CASE("reports are byte stable") {
  ExperimentConfig c = default_experiment_config("mhl-sparse");
  c.ensemble_count = 10;
  c.signal_length = 64;
  c.seed = 123;
  Report r1 = run_experiment(c);
  Report r2 = run_experiment(c);
  CHECK(r1.csv() == r2.csv());
  CHECK(!r1.csv().empty());
  CHECK(r1.csv().find("max_ratio") != std::string::npos);
}

TEST_CASE("closed form experiment passes and serializes") {
  ExperimentConfig c = default_experiment_config("closed-form");
  Report r = run_experiment(c);
  CHECK(r.all_pass());
  CHECK(r.json_summary().find("probes") != std::string::npos);
  CHECK(r.csv().rfind("beta,", 0) == 0);
}
