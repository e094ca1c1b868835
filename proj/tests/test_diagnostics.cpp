#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "specgrad/diagnostics.hpp"
#include "specgrad/problems.hpp"
#include "test_helpers.hpp"

using namespace specgrad;
using testutil::diag_quadratic;
using Catch::Approx;

TEST_CASE("root rate of geometric sequences") {
  REQUIRE(root_rate({1.0, 0.5, 0.25, 0.125}).value() == Approx(0.5).epsilon(1e-12));
  REQUIRE(root_rate({1.0, 0.1, 0.01}).value() == Approx(0.1).epsilon(1e-12));
  REQUIRE_FALSE(root_rate({7.07, 1e-17}).has_value());        // too short after one exact step
  REQUIRE_FALSE(root_rate({1.0, 1e-17, 1e-18}).has_value());  // everything past k=0 is noise
}

TEST_CASE("root rate recovers the ratio of random geometric sequences") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> theta_draw(0.5, 0.99);
  std::uniform_int_distribution<int> len_draw(3, 30);
  for (int i = 0; i < 200; ++i) {
    const double theta = theta_draw(rng);
    const int len = len_draw(rng);
    std::vector<double> errors(len);
    errors[0] = 1.0;
    for (int k = 1; k < len; ++k) errors[k] = errors[k - 1] * theta;
    REQUIRE(root_rate(errors).value() == Approx(theta).epsilon(1e-10));
  }
}

TEST_CASE("superlinear ratios") {
  REQUIRE(superlinear_ratios({1.0, 0.1, 0.001}) == std::vector<double>{0.1, 0.01});
  REQUIRE(superlinear_ratios({3.0, 3.0, 3.0}) == std::vector<double>{1.0, 1.0});
  REQUIRE(superlinear_ratios({1.0, 0.5, 0.25}) == std::vector<double>{0.5, 0.5});
  REQUIRE_THROWS_AS(superlinear_ratios({1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(superlinear_ratios({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("finite-difference Hessian action") {
  const auto iso = diag_quadratic(Vector(2, 1.0), {0.0, 0.0});
  const Vector hv = fd_hessian_vec(iso, {0.3, -0.7}, {1.0, 0.0}, 1e-5);
  REQUIRE(hv[0] == Approx(1.0).margin(1e-6));
  REQUIRE(hv[1] == Approx(0.0).margin(1e-6));

  const auto aniso = diag_quadratic({1.0, 4.0}, {0.0, 0.0});
  const Vector hv2 = fd_hessian_vec(aniso, {1.0, 1.0}, {0.0, 1.0}, 1e-5);
  REQUIRE(hv2[0] == Approx(0.0).margin(1e-6));
  REQUIRE(hv2[1] == Approx(4.0).margin(1e-6));

  // hand-derived Hessian of the two-dimensional Rosenbrock at its minimizer:
  // rows (10, -4) and (-4, 2)
  const auto rosen = make_ext_rosenbrock(2);
  const Vector col1 = fd_hessian_vec(rosen, {1.0, 1.0}, {1.0, 0.0}, hessian_fd_step({1.0, 1.0}));
  REQUIRE(col1[0] == Approx(10.0).margin(1e-4));
  REQUIRE(col1[1] == Approx(-4.0).margin(1e-4));
  const Vector col2 = fd_hessian_vec(rosen, {1.0, 1.0}, {0.0, 1.0}, hessian_fd_step({1.0, 1.0}));
  REQUIRE(col2[0] == Approx(-4.0).margin(1e-4));
  REQUIRE(col2[1] == Approx(2.0).margin(1e-4));

  REQUIRE_THROWS_AS(fd_hessian_vec(iso, {0.0, 0.0}, {0.0, 0.0}, 1e-5), std::invalid_argument);
}

TEST_CASE("superlinear residuals on the identity-Hessian quadratic") {
  const auto iso = diag_quadratic(Vector(2, 1.0), {0.0, 0.0});
  const Vector x_star{0.0, 0.0};

  // power-of-two iterates keep the finite differences exact
  std::vector<TracePoint> unit_steps;
  for (int k = 0; k < 6; ++k) {
    const double c = std::ldexp(1.0, 1 - k);
    unit_steps.push_back({{c, c}, 1.0, 1.0});
  }
  const auto res = superlinear_residuals(unit_steps, x_star, iso);
  REQUIRE(res.size() == 5);
  for (double r : res) REQUIRE(r == 0.0);

  std::vector<TracePoint> half_steps = unit_steps;
  for (auto& tp : half_steps) tp.lambda = 0.5;
  const auto res2 = superlinear_residuals(half_steps, x_star, iso);
  for (double r : res2) REQUIRE(r == 1.0);

  // a zero-length step is skipped with a NaN marker
  std::vector<TracePoint> with_dup = {{{1.0, 1.0}, 1.0, 1.0},
                                      {{1.0, 1.0}, 1.0, 1.0},
                                      {{0.5, 0.5}, 1.0, 1.0}};
  const auto res3 = superlinear_residuals(with_dup, x_star, iso);
  REQUIRE(res3.size() == 2);
  REQUIRE(std::isnan(res3[0]));
  REQUIRE_FALSE(std::isnan(res3[1]));
}

TEST_CASE("superlinear residuals are scale-free in the step on quadratics") {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector diag{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto p = diag_quadratic(diag, Vector(5, 0.0));
  const Vector x_star(5, 0.0);
  for (int i = 0; i < 50; ++i) {
    Vector base(5), s(5);
    for (auto& v : base) v = u(rng);
    for (auto& v : s) v = u(rng);
    if (norm2(s) < 0.1) continue;
    for (double c : {0.5, 3.0, 100.0}) {
      Vector scaled = s;
      for (auto& v : scaled) v *= c;
      Vector end1 = base, end2 = base;
      for (std::size_t j = 0; j < 5; ++j) {
        end1[j] += s[j];
        end2[j] += scaled[j];
      }
      const auto r1 = superlinear_residuals({{base, 0.7, 1.3}, {end1, 1.0, 1.0}}, x_star, p);
      const auto r2 = superlinear_residuals({{base, 0.7, 1.3}, {end2, 1.0, 1.0}}, x_star, p);
      REQUIRE(r1[0] == Approx(r2[0]).epsilon(1e-10));
    }
  }
}

TEST_CASE("monotone descent predicate") {
  REQUIRE(monotone_descent({3.0, 2.0, 2.0, 1.0}));
  REQUIRE_FALSE(monotone_descent({1.0, 2.0}));
  REQUIRE(monotone_descent({42.0}));
}

TEST_CASE("rate report for a quadratic solve") {
  Vector diag(10);
  for (std::size_t i = 0; i < 10; ++i) diag[i] = static_cast<double>(i + 1);
  const auto p = diag_quadratic(diag, Vector(10, 3.0));
  SolverConfig cfg;
  cfg.rule = StepSizeRule::TBB2P;
  cfg.tol_mode = TolMode::Absolute;
  cfg.tol = 1e-10;
  cfg.record_points = true;
  const auto res = minimize(p, cfg);
  REQUIRE(res.status == SolveStatus::Converged);

  const auto report = rate_report(res, p);
  REQUIRE(report.root_rate.has_value());
  REQUIRE(*report.root_rate < 1.0);
  REQUIRE(report.monotone);
  REQUIRE_FALSE(report.superlinear_ratios.empty());

  std::ostringstream out;
  write_rate_report_csv(out, report);
  const std::string text = out.str();
  REQUIRE(text.rfind("# diagnostics\n", 0) == 0);
  REQUIRE(text.find("root_rate,") != std::string::npos);
  REQUIRE(text.find("monotone,1") != std::string::npos);

  SolverConfig no_points = cfg;
  no_points.record_points = false;
  const auto res2 = minimize(p, no_points);
  REQUIRE_THROWS_AS(rate_report(res2, p), std::invalid_argument);
}
