#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specgrad/specgrad.hpp"

namespace {

using namespace specgrad;

struct SolverFlags {
  std::string tol_mode = "rel";
  double tol = 1e-6;
  double relax = 1.0;
  double mu1 = 0.32;
  double mu2 = 0.32;
  double omega = 0.76;
  int max_backtracks = 60;
  double alpha_min = 0.006;
  double alpha_max = 100.0;
  double sigma1 = 0.52;
  double sigma2 = 1.2;
  double alpha0 = 1.0;
  std::size_t max_iters = 10000;
  double max_time = 600.0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--tol-mode", f.tol_mode, "stopping mode: rel (||g|| < tol*||g0||) or abs (||g|| <= tol)")
      ->check(CLI::IsMember({"rel", "abs"}))
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "stopping tolerance")->capture_default_str();
  cmd->add_option("--relax", f.relax, "line-search relaxation factor in [0,1]")->capture_default_str();
  cmd->add_option("--mu1", f.mu1, "sufficient-decrease coefficient")->capture_default_str();
  cmd->add_option("--mu2", f.mu2, "certificate coefficient (mu1 <= mu2)")->capture_default_str();
  cmd->add_option("--omega", f.omega, "backtracking factor")->capture_default_str();
  cmd->add_option("--max-backtracks", f.max_backtracks, "line-search trial budget")->capture_default_str();
  cmd->add_option("--alpha-min", f.alpha_min, "safeguard lower bound")->capture_default_str();
  cmd->add_option("--alpha-max", f.alpha_max, "safeguard upper bound")->capture_default_str();
  cmd->add_option("--sigma1", f.sigma1, "safeguard band factor below |beta|")->capture_default_str();
  cmd->add_option("--sigma2", f.sigma2, "safeguard band factor above |beta|")->capture_default_str();
  cmd->add_option("--alpha0", f.alpha0, "initial safeguarded step")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "iteration budget")->capture_default_str();
  cmd->add_option("--max-time", f.max_time, "wall-clock budget in seconds")->capture_default_str();
}

SolverConfig to_config(const SolverFlags& f) {
  SolverConfig cfg;
  cfg.tol_mode = f.tol_mode == "abs" ? TolMode::Absolute : TolMode::Relative;
  cfg.tol = f.tol;
  cfg.linesearch.relax_factor = f.relax;
  cfg.linesearch.mu1 = f.mu1;
  cfg.linesearch.mu2 = f.mu2;
  cfg.linesearch.omega = f.omega;
  cfg.linesearch.gamma2 = f.omega;
  cfg.linesearch.max_backtracks = f.max_backtracks;
  cfg.safeguard.alpha_min = f.alpha_min;
  cfg.safeguard.alpha_max = f.alpha_max;
  cfg.safeguard.sigma1 = f.sigma1;
  cfg.safeguard.sigma2 = f.sigma2;
  cfg.alpha0 = f.alpha0;
  cfg.max_iters = f.max_iters;
  cfg.max_time_seconds = f.max_time;
  return cfg;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (char c : s) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

StepSizeRule parse_rule_or_throw(const std::string& s) {
  const auto r = parse_rule(s);
  if (!r) throw std::invalid_argument("unknown rule: " + s + " (expected bb1|bb2|tbb1|tbb2|tbb1p|tbb2p)");
  return *r;
}

int run_solve(const std::string& problem_name, std::size_t n, const std::string& rule_str,
              const SolverFlags& flags, const std::string& trace_path, bool diagnose) {
  SolverConfig cfg = to_config(flags);
  cfg.rule = parse_rule_or_throw(rule_str);
  cfg.record_points = diagnose;
  const Problem prob = make_problem(problem_name, n);
  const SolverResult res = minimize(prob, cfg);
  std::printf("%s %zu %.9g %.9g %.3f\n", status_name(res.status), res.trace.size(), res.f_final,
              res.gnorm_final, res.wall_time_seconds);
  if (!trace_path.empty()) {
    auto out = open_output(trace_path);
    write_trace_csv(out, res);
    if (diagnose) {
      if (prob.known_opt_point) {
        write_rate_report_csv(out, rate_report(res, prob));
      } else {
        std::cerr << "diagnose: " << prob.name << " has no known optimum point; skipping\n";
      }
    }
    if (!out) throw file_error("failed writing trace to " + trace_path);
  }
  return res.status == SolveStatus::Converged ? 0 : 1;
}

int run_bench(const std::string& problems_str, std::size_t n, const std::string& rules_str,
              const SolverFlags& flags, const std::string& out_path) {
  std::vector<Problem> problems;
  if (problems_str == "all") {
    problems = standard_collection(n, &std::cerr);
  } else {
    for (const auto& name : split_list(problems_str)) problems.push_back(make_problem(name, n));
  }
  std::vector<StepSizeRule> rules;
  for (const auto& r : split_list(rules_str)) rules.push_back(parse_rule_or_throw(r));
  const auto records = run_suite(problems, rules, to_config(flags));
  export_records(records, out_path);
  return 0;
}

int run_profile(const std::string& in_path, const std::string& metric_str, const std::string& out_path) {
  const auto metric = parse_metric(metric_str);
  if (!metric)
    throw std::invalid_argument("unknown metric: " + metric_str + " (expected iters|f_evals|g_evals|time)");
  const auto records = read_records_csv(in_path);
  const auto prof = perf_profile(records, *metric, default_tau_grid());
  export_profile(prof, out_path);
  return 0;
}

int run_check_grad(const std::string& problem_name, std::size_t n, int points, unsigned seed) {
  const Problem prob = make_problem(problem_name, n);
  double worst = max_rel_grad_error(prob, prob.start_point);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < points; ++i) {
    Vector x(prob.dim);
    for (auto& v : x) v = coord(rng);
    worst = std::max(worst, max_rel_grad_error(prob, x));
  }
  std::printf("max_rel_err %.6e\n", worst);
  return worst <= 1e-5 ? 0 : 1;
}

int run_list_problems() {
  for (const auto& e : problem_registry()) std::printf("%s,%s\n", e.name, e.dim_rule);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two- and three-point spectral step gradient solvers with a relaxed "
               "backtracking line search, plus a benchmark harness and performance profiles"};
  app.require_subcommand(1);

  std::string solve_problem, solve_rule, trace_path;
  std::size_t solve_n = 0;
  bool diagnose = false;
  SolverFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "run one solve; prints `status iters f_final gnorm time_s`");
  solve_cmd->add_option("--problem", solve_problem, "problem name (see list-problems)")->required();
  solve_cmd->add_option("--n", solve_n, "problem dimension")->required();
  solve_cmd->add_option("--rule", solve_rule, "step rule: bb1|bb2|tbb1|tbb2|tbb1p|tbb2p")->required();
  add_solver_flags(solve_cmd, solve_flags);
  auto* trace_opt = solve_cmd->add_option("--trace", trace_path, "write the per-iteration CSV here");
  solve_cmd->add_flag("--diagnose", diagnose, "append rate diagnostics to the trace CSV")->needs(trace_opt);

  std::string bench_problems, bench_rules, bench_out;
  std::size_t bench_n = 0;
  SolverFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "run a problems x rules suite and write a records CSV");
  bench_cmd->add_option("--problems", bench_problems, "comma-separated problem names, or `all`")->required();
  bench_cmd->add_option("--n", bench_n, "problem dimension")->required();
  bench_cmd->add_option("--rules", bench_rules, "comma-separated step rules")->required();
  bench_cmd->add_option("--out", bench_out, "records CSV output path")->required();
  add_solver_flags(bench_cmd, bench_flags);

  std::string profile_in, profile_metric = "iters", profile_out;
  auto* profile_cmd = app.add_subcommand("profile", "compute performance-profile curves from a records CSV");
  profile_cmd->add_option("--in", profile_in, "records CSV input path")->required();
  profile_cmd->add_option("--metric", profile_metric, "iters|f_evals|g_evals|time")->capture_default_str();
  profile_cmd->add_option("--out", profile_out, "profile CSV output path")->required();

  std::string check_problem;
  std::size_t check_n = 0;
  int check_points = 10;
  unsigned check_seed = 12345;
  auto* check_cmd = app.add_subcommand("check-grad", "finite-difference consistency check of a gradient");
  check_cmd->add_option("--problem", check_problem, "problem name")->required();
  check_cmd->add_option("--n", check_n, "problem dimension")->required();
  check_cmd->add_option("--points", check_points, "number of random probe points")->capture_default_str();
  check_cmd->add_option("--seed", check_seed, "probe-point RNG seed")->capture_default_str();

  auto* list_cmd = app.add_subcommand("list-problems", "print the collection as name,dim_constraint lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve_cmd) return run_solve(solve_problem, solve_n, solve_rule, solve_flags, trace_path, diagnose);
    if (*bench_cmd) return run_bench(bench_problems, bench_n, bench_rules, bench_flags, bench_out);
    if (*profile_cmd) return run_profile(profile_in, profile_metric, profile_out);
    if (*check_cmd) return run_check_grad(check_problem, check_n, check_points, check_seed);
    if (*list_cmd) return run_list_problems();
  } catch (const specgrad::file_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
