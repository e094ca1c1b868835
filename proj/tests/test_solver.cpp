#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "specgrad/problems.hpp"
#include "specgrad/solver.hpp"
#include "test_helpers.hpp"

using namespace specgrad;
using testutil::diag_quadratic;
using testutil::random_vector;
using Catch::Approx;

TEST_CASE("direction scales the negative gradient") {
  REQUIRE(direction(2.0, {1.0, -1.0}) == Vector{-2.0, 2.0});
  REQUIRE(direction(1.0, {0.0, 0.0}) == Vector{0.0, 0.0});

  const Vector g{4.0, 0.0};
  const Vector d = direction(0.5, g);
  REQUIRE(norm2(d) == Approx(2.0).epsilon(1e-14));
  REQUIRE(norm2(d) == Approx(0.5 * norm2(g)).epsilon(1e-14));
  REQUIRE(dot(g, d) == Approx(-8.0).epsilon(1e-14));
  REQUIRE(dot(g, d) == Approx(-0.5 * norm2(g) * norm2(g)).epsilon(1e-14));

  REQUIRE_THROWS_AS(direction(0.0, {1.0}), std::invalid_argument);
}

TEST_CASE("stopping test in both modes") {
  SolverConfig rel;
  rel.tol_mode = TolMode::Relative;
  rel.tol = 1e-6;
  REQUIRE(check_stop(1e-7, 1.0, rel));
  REQUIRE_FALSE(check_stop(1e-6, 1.0, rel));  // strict inequality
  REQUIRE(check_stop(0.5, 0.0, rel));         // stationary start point

  SolverConfig abs;
  abs.tol_mode = TolMode::Absolute;
  abs.tol = 1e-4;
  REQUIRE(check_stop(5e-5, 1.0, abs));
  REQUIRE(check_stop(1e-4, 1.0, abs));
  REQUIRE_FALSE(check_stop(2e-4, 1.0, abs));
}

TEST_CASE("one exact step on the isotropic quadratic") {
  const auto p = diag_quadratic(Vector(2, 1.0), {5.0, 5.0});
  SolverConfig cfg;
  const auto res = minimize(p, cfg);
  REQUIRE(res.status == SolveStatus::Converged);
  REQUIRE(res.trace.size() == 1);
  REQUIRE(res.x_final == Vector{0.0, 0.0});
  REQUIRE(res.gnorm_final == 0.0);
  REQUIRE(res.f_final == 0.0);
  REQUIRE(res.n_f_evals == 2);
  REQUIRE(res.n_g_evals == 2);
  REQUIRE(res.trace[0].f == 25.0);
  REQUIRE(res.trace[0].gnorm == Approx(std::sqrt(50.0)).epsilon(1e-14));
  REQUIRE(res.trace[0].alpha_bar == 1.0);
  REQUIRE(res.trace[0].lambda == 1.0);
  REQUIRE(res.trace[0].p == 0);
}

TEST_CASE("stationary start point converges with an empty trace") {
  const auto p = diag_quadratic(Vector(3, 2.0), Vector(3, 0.0));
  const auto res = minimize(p, SolverConfig{});
  REQUIRE(res.status == SolveStatus::Converged);
  REQUIRE(res.trace.empty());
  REQUIRE(res.n_f_evals == 1);
  REQUIRE(res.n_g_evals == 1);
}

TEST_CASE("iteration budget exhaustion") {
  const auto p = make_ext_rosenbrock(10);
  SolverConfig cfg;
  cfg.max_iters = 1;
  const auto res = minimize(p, cfg);
  REQUIRE(res.status == SolveStatus::MaxIters);
  REQUIRE(res.trace.size() == 1);
}

TEST_CASE("wall-clock budget exhaustion") {
  const auto p = make_ext_rosenbrock(10);
  SolverConfig cfg;
  cfg.max_time_seconds = 1e-12;
  const auto res = minimize(p, cfg);
  REQUIRE(res.status == SolveStatus::Timeout);
  REQUIRE(res.trace.size() >= 1);
}

TEST_CASE("line-search failure surfaces as a status") {
  Problem p;
  p.name = "cliff";
  p.dim = 1;
  p.start_point = {1.0};
  p.value_at = [](const Vector& x) {
    if (x[0] == 1.0) return 5.0;
    return std::numeric_limits<double>::quiet_NaN();
  };
  p.gradient_at = [](const Vector&) { return Vector{1.0}; };
  const auto res = minimize(p, SolverConfig{});
  REQUIRE(res.status == SolveStatus::LineSearchFail);
  REQUIRE(res.trace.empty());
  REQUIRE(res.x_final == Vector{1.0});
}

TEST_CASE("non-finite values surface as a status") {
  Problem bad_start;
  bad_start.name = "nan_at_start";
  bad_start.dim = 1;
  bad_start.start_point = {1.0};
  bad_start.value_at = [](const Vector&) { return std::numeric_limits<double>::quiet_NaN(); };
  bad_start.gradient_at = [](const Vector&) { return Vector{1.0}; };
  REQUIRE(minimize(bad_start, SolverConfig{}).status == SolveStatus::NonFiniteValue);

  Problem bad_grad;
  bad_grad.name = "nan_gradient_later";
  bad_grad.dim = 1;
  bad_grad.start_point = {1.0};
  bad_grad.value_at = [](const Vector& x) { return 0.5 * x[0] * x[0]; };
  bad_grad.gradient_at = [](const Vector& x) {
    if (x[0] == 1.0) return Vector{1.0};
    return Vector{std::numeric_limits<double>::quiet_NaN()};
  };
  const auto res = minimize(bad_grad, SolverConfig{});
  REQUIRE(res.status == SolveStatus::NonFiniteValue);
  REQUIRE(res.trace.size() == 1);
}

TEST_CASE("solver config validation") {
  const auto p = diag_quadratic(Vector(2, 1.0), {1.0, 1.0});
  SolverConfig cfg;
  cfg.tol = 0.0;
  REQUIRE_THROWS_AS(minimize(p, cfg), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.alpha0 = 1000.0;  // outside [alpha_min, alpha_max]
  REQUIRE_THROWS_AS(minimize(p, cfg), std::invalid_argument);
}

TEST_CASE("per-iteration invariants on a converged run") {
  const auto p = make_ext_rosenbrock(50);
  SolverConfig cfg;
  cfg.rule = StepSizeRule::TBB1P;
  cfg.tol_mode = TolMode::Absolute;
  cfg.tol = 1e-6;
  cfg.record_points = true;
  const auto res = minimize(p, cfg);
  REQUIRE(res.status == SolveStatus::Converged);
  REQUIRE(res.gnorm_final <= cfg.tol);
  REQUIRE(res.trace.size() <= cfg.max_iters);
  REQUIRE(res.points.size() == res.trace.size() + 1);

  std::size_t expected_f_evals = 1;
  for (std::size_t k = 0; k < res.trace.size(); ++k) {
    const auto& r = res.trace[k];
    REQUIRE(r.k == k);
    REQUIRE(r.alpha_bar >= cfg.safeguard.alpha_min);
    REQUIRE(r.alpha_bar <= cfg.safeguard.alpha_max);
    REQUIRE(r.lambda > 0.0);
    REQUIRE(r.lambda <= 1.0);
    REQUIRE(r.p >= 0);
    expected_f_evals += static_cast<std::size_t>(r.p) + 1;
    if (k > 0) REQUIRE(r.f < res.trace[k - 1].f);

    const Vector g = p.gradient_at(res.points[k]);
    const Vector d = direction(r.alpha_bar, g);
    const double gn = norm2(g);
    REQUIRE(norm2(d) == Approx(r.alpha_bar * gn).epsilon(1e-12));
    REQUIRE(norm2(d) <= cfg.safeguard.alpha_max * gn * (1.0 + 1e-12));
    REQUIRE(dot(g, d) == Approx(-r.alpha_bar * gn * gn).epsilon(1e-12));
    REQUIRE(dot(g, d) <= -cfg.safeguard.alpha_min * gn * gn * (1.0 - 1e-12));
    REQUIRE(r.gnorm == Approx(gn).epsilon(1e-12));
  }
  REQUIRE(res.f_final < res.trace.back().f);
  REQUIRE(res.n_f_evals == expected_f_evals);
  REQUIRE(res.n_g_evals == res.trace.size() + 1);
}

TEST_CASE("three-point rules reduce to two-point rules at the first update") {
  const auto p = make_ext_rosenbrock(10);
  SolverConfig cfg;
  cfg.max_iters = 3;
  const auto run = [&](StepSizeRule rule) {
    SolverConfig c = cfg;
    c.rule = rule;
    return minimize(p, c);
  };
  const auto bb1_run = run(StepSizeRule::BB1);
  const auto tbb1_run = run(StepSizeRule::TBB1);
  REQUIRE(bb1_run.trace.size() >= 2);
  REQUIRE(tbb1_run.trace[1].alpha_bar == bb1_run.trace[1].alpha_bar);

  const auto bb2_run = run(StepSizeRule::BB2);
  const auto tbb2_run = run(StepSizeRule::TBB2);
  REQUIRE(tbb2_run.trace[1].alpha_bar == bb2_run.trace[1].alpha_bar);
}

TEST_CASE("evaluation bookkeeping matches a wrapped counter") {
  auto base = make_ext_rosenbrock(20);
  std::size_t f_calls = 0, g_calls = 0;
  Problem counted = base;
  counted.value_at = [&f_calls, base](const Vector& x) {
    ++f_calls;
    return base.value_at(x);
  };
  counted.gradient_at = [&g_calls, base](const Vector& x) {
    ++g_calls;
    return base.gradient_at(x);
  };
  SolverConfig cfg;
  cfg.rule = StepSizeRule::TBB2;
  const auto res = minimize(counted, cfg);
  REQUIRE(res.status == SolveStatus::Converged);
  REQUIRE(res.n_f_evals == f_calls);
  REQUIRE(res.n_g_evals == g_calls);
}

TEST_CASE("every rule converges on random strongly convex quadratics") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> cond(1.0, 100.0);
  std::uniform_int_distribution<std::size_t> dim(2, 50);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = dim(rng);
    Vector diag(n);
    const double kappa = cond(rng);
    for (std::size_t i = 0; i < n; ++i)
      diag[i] = 1.0 + (kappa - 1.0) * static_cast<double>(i) / static_cast<double>(n > 1 ? n - 1 : 1);
    const auto p = diag_quadratic(diag, random_vector(rng, n, -10.0, 10.0));
    for (auto rule : all_rules()) {
      SolverConfig cfg;
      cfg.rule = rule;
      cfg.tol_mode = TolMode::Absolute;
      cfg.tol = 1e-6;
      cfg.max_iters = 500;
      const auto res = minimize(p, cfg);
      INFO("rule " << rule_name(rule) << " trial " << trial << " n " << n);
      REQUIRE(res.status == SolveStatus::Converged);
      REQUIRE(res.gnorm_final <= 1e-6);
    }
  }
}

TEST_CASE("trace CSV shape") {
  const auto p = make_ext_rosenbrock(10);
  SolverConfig cfg;
  cfg.max_iters = 5;
  const auto res = minimize(p, cfg);
  std::ostringstream out;
  write_trace_csv(out, res);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "k,f,gnorm,alpha_bar,lambda,p");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  REQUIRE(rows == res.trace.size());
}
