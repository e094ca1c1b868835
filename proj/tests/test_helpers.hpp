#pragma once

#include <random>

#include "specgrad/problem.hpp"
#include "specgrad/stepsize.hpp"

namespace testutil {

using specgrad::Vector;

/// History realizing the given difference pairs: x_curr = g_curr = 0,
/// x_prev = -s1, x_prev2 = -s2, g_prev = -y1, g_prev2 = -y2.
inline specgrad::IterateHistory history_from_pairs(const Vector& s1, const Vector& s2,
                                                   const Vector& y1, const Vector& y2) {
  const std::size_t n = s1.size();
  Vector zero(n, 0.0), xp(n), xp2(n), gp(n), gp2(n);
  for (std::size_t i = 0; i < n; ++i) {
    xp[i] = -s1[i];
    xp2[i] = -s2[i];
    gp[i] = -y1[i];
    gp2[i] = -y2[i];
  }
  return specgrad::IterateHistory(zero, xp, xp2, zero, gp, gp2);
}

inline Vector random_vector(std::mt19937& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Diagonal quadratic f = (1/2) sum d_i x_i^2 with gradient d_i x_i.
inline specgrad::Problem diag_quadratic(const Vector& diag, const Vector& x0) {
  specgrad::Problem p;
  p.name = "diag_quadratic";
  p.dim = diag.size();
  p.value_at = [diag](const Vector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i) f += 0.5 * diag[i] * x[i] * x[i];
    return f;
  };
  p.gradient_at = [diag](const Vector& x) {
    Vector g(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) g[i] = diag[i] * x[i];
    return g;
  };
  p.start_point = x0;
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(diag.size(), 0.0);
  return p;
}

}  // namespace testutil
