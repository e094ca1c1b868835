#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "specgrad/errors.hpp"
#include "specgrad/vec.hpp"

namespace specgrad {

/// A smooth unconstrained minimization problem with an analytic gradient.
///
/// Evaluators must be pure: identical inputs yield bit-identical outputs.
/// Instances are immutable after construction and safe to evaluate from
/// multiple threads.
struct Problem {
  std::string name;
  std::size_t dim = 0;
  std::function<double(const Vector&)> value_at;
  std::function<Vector(const Vector&)> gradient_at;
  Vector start_point;
  std::optional<double> known_opt_value;
  std::optional<Vector> known_opt_point;
};

/// Default central-difference step, balancing truncation against rounding.
inline double fd_step(const Vector& x) { return 1e-6 * (1.0 + inf_norm(x)); }

/// Central finite-difference gradient; the verification oracle for gradient_at.
inline Vector fd_gradient(const Problem& p, const Vector& x, double h) {
  if (x.size() != p.dim)
    throw std::invalid_argument("fd_gradient: x has length " + std::to_string(x.size()) +
                                ", problem dimension is " + std::to_string(p.dim));
  if (!all_finite(x)) throw std::invalid_argument("fd_gradient: x must be finite");
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be positive");
  Vector g(p.dim);
  Vector probe = x;
  for (std::size_t i = 0; i < p.dim; ++i) {
    probe[i] = x[i] + h;
    const double fp = p.value_at(probe);
    probe[i] = x[i] - h;
    const double fm = p.value_at(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw nonfinite_evaluation_error("fd_gradient: non-finite objective at probe for component " +
                                       std::to_string(i) + " of " + p.name);
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Max-norm deviation between the analytic gradient and the finite-difference
/// oracle, relative to the gradient scale (floored at 1 so near-stationary
/// points compare absolutely).
inline double max_rel_grad_error(const Problem& p, const Vector& x, double h) {
  const Vector ga = p.gradient_at(x);
  const Vector gf = fd_gradient(p, x, h);
  double diff = 0.0;
  for (std::size_t i = 0; i < ga.size(); ++i) diff = std::max(diff, std::abs(ga[i] - gf[i]));
  return diff / std::max(1.0, inf_norm(ga));
}

inline double max_rel_grad_error(const Problem& p, const Vector& x) {
  return max_rel_grad_error(p, x, fd_step(x));
}

}  // namespace specgrad
