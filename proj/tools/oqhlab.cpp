#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "oqh/experiments.hpp"
#include "oqh/fourier.hpp"
#include "oqh/multiplier.hpp"
#include "oqh/number_theory.hpp"
#include "oqh/sparse.hpp"
#include "oqh/weights.hpp"

namespace fs = std::filesystem;
using namespace oqh;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_checks(const Report& rep) {
  for (const Check& c : rep.checks)
    std::printf("[%s] %s: %.6g (threshold %.6g)\n", c.pass ? "PASS" : "FAIL",
                c.label.c_str(), c.value, c.threshold);
}

int cmd_experiment(const std::string& name, const std::string& config_path,
                   const std::string& out, std::uint64_t seed, bool have_seed) {
  ExperimentConfig cfg = default_experiment_config(name);
  if (!config_path.empty()) {
    nlohmann::json user = nlohmann::json::parse(slurp(config_path));
    nlohmann::json base = nlohmann::json::parse(cfg.to_json());
    base.merge_patch(user);
    cfg = ExperimentConfig::from_json(base.dump());
    cfg.name = name.empty() ? cfg.name : name;
  }
  if (have_seed) cfg.seed = seed;
  if (!out.empty()) cfg.out_dir = out;
  Report rep = run_experiment(cfg);
  if (!cfg.out_dir.empty()) write_report_files(rep, cfg.out_dir);
  print_checks(rep);
  std::printf("%s: %s (%.2fs)\n", rep.name.c_str(),
              rep.all_pass() ? "all checks passed" : "CHECKS FAILED",
              rep.wall_seconds);
  return rep.all_pass() ? 0 : 1;
}

int cmd_transform(const std::string& input, double alpha, int64_t factor,
                  const std::string& method, const std::string& out) {
  Signal f = Signal::from_json(slurp(input));
  Window w = default_window(f, factor);
  ConvMethod m = method == "direct" ? ConvMethod::direct : ConvMethod::fft;
  Signal hf = apply_halpha(f, alpha, w, m);
  std::string text = hf.to_json();
  if (out.empty())
    std::cout << text << "\n";
  else
    std::ofstream(out) << text;
  return 0;
}

int cmd_multiplier(const std::string& alpha_tok, int64_t j, double eps,
                   int64_t grid, const std::string& what,
                   const std::string& out) {
  double alpha = parse_alpha(alpha_tok);
  ArcParams params;
  params.epsilon = eps;
  params.j = j;
  int64_t L = grid > 0 ? grid : (int64_t{1} << (j + 3));

  std::vector<cplx> vals;
  if (what == "Mj") vals = Mj_on_grid(alpha, j, L);
  else if (what == "Lj") vals = Lj_on_grid(alpha, j, params, L);
  else if (what == "Ej") vals = Ej_on_grid(alpha, j, params, L);
  else if (what == "Uj") {
    vals.resize(static_cast<size_t>(L));
    for (int64_t k = 0; k < L; ++k) {
      double beta = static_cast<double>(k) / static_cast<double>(L);
      if (beta > 0.5) beta -= 1.0;
      vals[static_cast<size_t>(k)] = eval_Uj(0.0, beta, j);
    }
  } else if (what == "kernel") {
    auto ker = kernel_Ej(alpha, j, params, L);
    std::ostringstream csv;
    csv << "m,re,im,abs\n";
    double sup = 0.0;
    for (int64_t m = ker.kernel.support_min(); m <= ker.kernel.support_max(); ++m) {
      cplx v = ker.kernel(m);
      sup = std::max(sup, std::abs(v));
      csv << m << ',' << fmt_num(v.real()) << ',' << fmt_num(v.imag()) << ','
          << fmt_num(std::abs(v)) << '\n';
    }
    nlohmann::json meta = {{"what", what}, {"alpha", alpha}, {"j", j},
                           {"eps", eps},  {"grid", L},       {"sup", sup},
                           {"split", ker.split}, {"far_part_empty", ker.far_part_empty}};
    fs::create_directories(out.empty() ? "." : out);
    fs::path dir = out.empty() ? "." : out;
    std::ofstream(dir / "kernel.csv") << csv.str();
    std::ofstream(dir / "kernel.json") << meta.dump(2);
    std::printf("sup |kernel| = %.6g\n", sup);
    return 0;
  } else {
    std::fprintf(stderr, "unknown --what %s\n", what.c_str());
    return 2;
  }

  std::ostringstream csv;
  csv << "beta,re,im,abs\n";
  double sup = 0.0;
  double argmax = 0.0;
  for (int64_t k = 0; k < L; ++k) {
    double beta = static_cast<double>(k) / static_cast<double>(L);
    const cplx& v = vals[static_cast<size_t>(k)];
    if (std::abs(v) > sup) {
      sup = std::abs(v);
      argmax = beta;
    }
    csv << fmt_num(beta) << ',' << fmt_num(v.real()) << ',' << fmt_num(v.imag())
        << ',' << fmt_num(std::abs(v)) << '\n';
  }
  nlohmann::json meta = {{"what", what},     {"alpha", alpha}, {"j", j},
                         {"eps", eps},       {"grid", L},      {"sup", sup},
                         {"argmax_beta", argmax}};
  fs::path dir = out.empty() ? "." : out;
  fs::create_directories(dir);
  std::ofstream(dir / (what + ".csv")) << csv.str();
  std::ofstream(dir / (what + ".json")) << meta.dump(2);
  std::printf("sup |%s| = %.6g at beta = %.6g\n", what.c_str(), sup, argmax);
  return 0;
}

int cmd_gauss(int64_t s_max, const std::string& out) {
  std::ostringstream csv;
  csv << "s,Q,A,B,abs,arg\n";
  double worst = 0.0;
  for (int64_t s = 1; s <= s_max; ++s) {
    auto level = enumerate_level(s);
    for (const auto& [aq, bq] : level.pairs) {
      if (aq.den != bq.den) continue;
      cplx v = gauss_sum(aq, bq.num);
      worst = std::max(worst, std::abs(v) * std::sqrt(static_cast<double>(aq.den)));
      csv << s << ',' << aq.den << ',' << aq.num << ',' << bq.num << ','
          << fmt_num(std::abs(v)) << ',' << fmt_num(std::arg(v)) << '\n';
    }
  }
  if (out.empty())
    std::cout << csv.str();
  else {
    fs::create_directories(fs::path(out));
    std::ofstream(fs::path(out) / "gauss.csv") << csv.str();
  }
  std::printf("max |S| sqrt(Q) = %.12g\n", worst);
  return worst <= std::sqrt(2.0) + 1e-12 ? 0 : 1;
}

int cmd_sparse_check(const std::string& input) {
  nlohmann::json j = nlohmann::json::parse(slurp(input));
  SparseCollection c;
  c.rho = j.value("rho", 0.5);
  for (const auto& e : j.at("entries")) {
    SparseEntry entry;
    entry.interval = {e.at("a").get<int64_t>(), e.at("b").get<int64_t>()};
    entry.witness.assign(static_cast<size_t>(entry.interval.length()), false);
    for (int64_t n : e.at("witness").get<std::vector<int64_t>>()) {
      if (!entry.interval.contains(n))
        throw StructuralError("sparse-check: witness point outside interval");
      entry.witness[static_cast<size_t>(n - entry.interval.a)] = true;
    }
    c.entries.push_back(std::move(entry));
  }
  auto rep = verify_sparse(c);
  std::printf("%s%s%s\n", rep.ok ? "valid" : "invalid", rep.ok ? "" : ": ",
              rep.diagnostic.c_str());
  return rep.ok ? 0 : 1;
}

int cmd_weights(const std::string& kind, double p1, double p2, int64_t win_len,
                double r) {
  Window win(0, win_len - 1);
  Weight w = kind == "step" ? step_weight(win, p1, p2) : power_weight(win, p1);
  (void)p2;
  double a2 = a2_characteristic(w);
  double rh = rh_characteristic(w, r);
  std::printf("a2 = %.12g\nrh(%g) = %.12g\n", a2, r, rh);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oqhlab: quadratic-phase Hilbert transform laboratory"};
  app.require_subcommand(1);

  std::string name, config_path, out, input, method = "fft", what = "Mj";
  std::string alpha_tok = "golden-1", wkind = "power";
  double alpha = 0.0, eps = 0.15, r = 1.5, wp1 = 0.5, wp2 = 1.0;
  int64_t j = 8, grid = 0, factor = 4, s_max = 4, win_len = 256;
  std::uint64_t seed = 1;

  auto* exp = app.add_subcommand("experiment", "run a registry experiment");
  exp->add_option("--name", name, "registry experiment name");
  exp->add_option("--config", config_path, "JSON config file");
  exp->add_option("--out", out, "output directory");
  auto* seed_opt = exp->add_option("--seed", seed, "RNG seed override");
  exp->add_flag_callback("--list", [] {
    for (const std::string& n : experiment_registry()) std::printf("%s\n", n.c_str());
    std::exit(0);
  });

  auto* tr = app.add_subcommand("transform", "apply H^alpha to a signal");
  tr->add_option("--input", input, "signal JSON file")->required();
  tr->add_option("--alpha", alpha, "modulation parameter");
  tr->add_option("--window-factor", factor, "window expansion factor");
  tr->add_option("--method", method, "direct or fft");
  tr->add_option("--out", out, "output JSON file (stdout if empty)");

  auto* mu = app.add_subcommand("multiplier", "sample a multiplier piece");
  mu->add_option("--alpha", alpha_tok, "alpha (number, A/Q, or named token)");
  mu->add_option("--j", j, "dyadic scale");
  mu->add_option("--eps", eps, "arc exponent");
  mu->add_option("--grid", grid, "grid size (default 2^{j+3})");
  mu->add_option("--what", what, "Mj, Uj, Lj, Ej or kernel");
  mu->add_option("--out", out, "output directory");

  auto* ga = app.add_subcommand("gauss", "enumerate Gauss sums by level");
  ga->add_option("--s-max", s_max, "largest level");
  ga->add_option("--out", out, "output directory (stdout if empty)");

  auto* sc = app.add_subcommand("sparse-check", "verify a sparse collection");
  sc->add_option("--input", input, "collection JSON file")->required();

  auto* sr = app.add_subcommand("sparse-ratio", "uniform sparse-ratio sweep");
  sr->add_option("--config", config_path, "JSON config file");
  sr->add_option("--out", out, "output directory");
  auto* sr_seed = sr->add_option("--seed", seed, "RNG seed override");

  auto* we = app.add_subcommand("weights", "weight characteristics");
  we->add_option("--kind", wkind, "power or step");
  we->add_option("--p1", wp1, "exponent (power) or left value (step)");
  we->add_option("--p2", wp2, "right value (step)");
  we->add_option("--window", win_len, "window length");
  we->add_option("--r", r, "reverse-Holder exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exp->parsed())
      return cmd_experiment(name, config_path, out, seed, seed_opt->count() > 0);
    if (tr->parsed()) return cmd_transform(input, alpha, factor, method, out);
    if (mu->parsed()) return cmd_multiplier(alpha_tok, j, eps, grid, what, out);
    if (ga->parsed()) return cmd_gauss(s_max, out);
    if (sc->parsed()) return cmd_sparse_check(input);
    if (sr->parsed())
      return cmd_experiment("sparse-ratio", config_path, out, seed,
                            sr_seed->count() > 0);
    if (we->parsed()) return cmd_weights(wkind, wp1, wp2, win_len, r);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
