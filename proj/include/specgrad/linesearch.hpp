#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specgrad/errors.hpp"
#include "specgrad/vec.hpp"

namespace specgrad {

struct LineSearchConfig {
  double mu1 = 0.32;
  double mu2 = 0.32;
  double omega = 0.76;
  /// Scales the relaxation bound toward its maximum: 0 gives the plain
  /// generalized Armijo test, 1 the fully relaxed one.
  double relax_factor = 1.0;
  int max_backtracks = 60;
  /// Certificate constants. Backtracking from lambda = 1 realizes the
  /// generalized Armijo certificate with gamma1 = 1 and gamma2 = omega: either
  /// the full step is accepted, or the previous (rejected) trial witnesses the
  /// failure of the mu2-test since mu2 >= mu1. They are recorded here for
  /// assertion only and do not alter the loop.
  double gamma1 = 1.0;
  double gamma2 = 0.76;

  void validate() const {
    if (!(0.0 < mu1 && mu1 <= mu2 && mu2 < 1.0))
      throw std::invalid_argument("line search: need 0 < mu1 <= mu2 < 1");
    if (!(0.0 < omega && omega < 1.0)) throw std::invalid_argument("line search: omega must be in (0,1)");
    if (!(relax_factor >= 0.0 && relax_factor <= 1.0))
      throw std::invalid_argument("line search: relax_factor must be in [0,1]");
    if (max_backtracks < 1) throw std::invalid_argument("line search: max_backtracks must be positive");
    if (!(gamma1 > 0.0 && gamma2 > 0.0)) throw std::invalid_argument("line search: gamma1, gamma2 must be positive");
  }
};

struct LineSearchOutcome {
  double lambda = 1.0;  ///< accepted step, omega^p by repeated multiplication
  int p = 0;            ///< backtrack count
  double f_new = 0.0;   ///< objective at the accepted point
  int n_evals = 0;      ///< objective evaluations consumed (= p + 1)
};

/// Relaxation bound L = theta * alpha_bar * (-g'd) / ||d||^2, the largest
/// value keeping the relaxed test a sufficient-descent condition.
inline double relax_bound(double alpha_bar, const Vector& g, const Vector& d, double theta) {
  if (!(alpha_bar > 0.0)) throw std::invalid_argument("relax_bound: alpha_bar must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("relax_bound: theta must be in [0,1]");
  const double gtd = dot(g, d);
  if (!(gtd < 0.0)) throw not_descent_direction_error("relax_bound: d is not a descent direction");
  const double dn2 = dot(d, d);
  return theta * alpha_bar * (-gtd) / dn2;
}

/// Backtracking from lambda = 1: returns the largest lambda in
/// {1, omega, omega^2, ...} with
///   f(x + lambda d) <= f(x) + mu1 lambda [g'd + lambda L ||d||^2 / (2 alpha_bar)],
/// L from relax_bound. Non-finite trial values count as rejections so the
/// search can back out of overflow regions.
template <typename F>
LineSearchOutcome search(F&& f_eval, const Vector& x, double f_x, const Vector& g, const Vector& d,
                         double alpha_bar, const LineSearchConfig& cfg) {
  cfg.validate();
  const double gtd = dot(g, d);
  if (!(gtd < 0.0)) throw not_descent_direction_error("search: d is not a descent direction");
  const double dn2 = dot(d, d);
  const double relax = relax_bound(alpha_bar, g, d, cfg.relax_factor);

  Vector trial(x.size());
  double lambda = 1.0;
  double f_trial = std::numeric_limits<double>::quiet_NaN();
  double last_lambda = lambda;
  for (int p = 0; p <= cfg.max_backtracks; ++p) {
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + lambda * d[i];
    f_trial = f_eval(trial);
    const double rhs = f_x + cfg.mu1 * lambda * (gtd + 0.5 / alpha_bar * lambda * relax * dn2);
    if (std::isfinite(f_trial) && f_trial <= rhs) return {lambda, p, f_trial, p + 1};
    last_lambda = lambda;
    lambda *= cfg.omega;
  }
  throw line_search_error("line search: no acceptable step within " +
                              std::to_string(cfg.max_backtracks) + " backtracks",
                          last_lambda, f_trial, cfg.max_backtracks);
}

}  // namespace specgrad
