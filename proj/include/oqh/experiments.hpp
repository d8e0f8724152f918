#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oqh/signal.hpp"

namespace oqh {

double parse_alpha(const std::string& token);
std::vector<std::string> default_alpha_set();

struct ExperimentConfig {
  std::string name;
  int schema_version = 1;
  std::vector<std::string> alpha_set = default_alpha_set();
  double eps = 0.15;
  int64_t j_min = 8, j_max = 14;
  int64_t s_min = 1, s_max = 3;
  int64_t grid = 0;  // 0 = experiment default
  std::string ensemble = "rademacher";
  int64_t ensemble_count = 100;
  std::uint64_t seed = 1;
  double r = 1.5, s_exp = 1.5;
  int64_t signal_length = 256;
  std::string out_dir;

  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log2 y
};

/// Least squares of log2(y) against x. Needs >= 3 points with y > 0.
FitResult fit_log_slope(const std::vector<std::pair<double, double>>& points);

struct Check {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct Report {
  std::string name;
  std::string config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> metrics;  // scalar summary values
  bool has_fit = false;
  FitResult fit;
  double wall_seconds = 0.0;

  bool all_pass() const;
  /// Byte-stable for a fixed config and seed (no timestamps).
  std::string csv() const;
  std::string json_summary() const;
  /// Self-contained log2-metric line plot; empty when there is nothing to plot.
  std::string svg() const;

  void add_check(const std::string& label, double value, double threshold,
                 bool pass);
};

std::vector<std::string> experiment_registry();

/// Tuned per-experiment defaults; config files and CLI flags override them.
ExperimentConfig default_experiment_config(const std::string& name);

/// Paper anchor probed by a registry experiment (recorded in JSON metadata).
std::string experiment_anchor(const std::string& name);

Report run_experiment(const ExperimentConfig& config);

/// Writes report.csv, report.json and report.svg under config.out_dir (if
/// set), creating the directory.
void write_report_files(const Report& rep, const std::string& out_dir);

std::string fmt_num(double v);

/// Deterministic signal ensembles. Kinds: rademacher, gaussian, indicator.
Signal random_signal(const std::string& kind, int64_t offset, int64_t length,
                     std::mt19937_64& rng);
/// Nonnegative uniform [0,1) values; used by the domination experiments.
Signal random_nonneg_signal(int64_t offset, int64_t length, std::mt19937_64& rng);

}  // namespace oqh
