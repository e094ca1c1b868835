#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "specgrad/csv.hpp"
#include "specgrad/problem.hpp"
#include "specgrad/solver.hpp"

namespace specgrad {

/// One accepted iterate together with the step data that produced the move
/// away from it.
struct TracePoint {
  Vector x;
  double lambda = 1.0;
  double alpha_bar = 1.0;
};

/// Empirical root rate (errors[K])^(1/K), K the last index whose error is
/// still above rounding noise relative to errors[0]. Below 1 indicates
/// R-linear convergence. Empty when too little data survives the noise filter.
inline std::optional<double> root_rate(const std::vector<double>& errors) {
  if (errors.size() < 3) return std::nullopt;
  const double noise_floor = 10.0 * std::numeric_limits<double>::epsilon() * errors.front();
  std::size_t last = 0;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k] > noise_floor) last = k;
  }
  if (last < 1) return std::nullopt;
  return std::pow(errors[last], 1.0 / static_cast<double>(last));
}

/// Consecutive error ratios e_{k+1}/e_k; they tend to 0 under superlinear
/// convergence.
inline std::vector<double> superlinear_ratios(const std::vector<double>& errors) {
  if (errors.size() < 2) throw std::invalid_argument("superlinear_ratios: need at least 2 entries");
  for (double e : errors) {
    if (!(e > 0.0)) throw std::invalid_argument("superlinear_ratios: entries must be positive");
  }
  std::vector<double> r(errors.size() - 1);
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) r[k] = errors[k + 1] / errors[k];
  return r;
}

/// Central-difference Hessian action (g(x + h v) - g(x - h v)) / (2h).
inline Vector fd_hessian_vec(const Problem& p, const Vector& x, const Vector& v, double h) {
  if (!(norm2(v) > 0.0)) throw std::invalid_argument("fd_hessian_vec: v must be nonzero");
  if (!(h > 0.0)) throw std::invalid_argument("fd_hessian_vec: h must be positive");
  Vector xp(x.size()), xm(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h * v[i];
    xm[i] = x[i] - h * v[i];
  }
  const Vector gp = p.gradient_at(xp);
  const Vector gm = p.gradient_at(xm);
  if (!all_finite(gp) || !all_finite(gm))
    throw nonfinite_evaluation_error("fd_hessian_vec: non-finite gradient at probe for " + p.name);
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = (gp[i] - gm[i]) / (2.0 * h);
  return r;
}

/// Step size for Hessian-action differences at the minimizer.
inline double hessian_fd_step(const Vector& x_star) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + inf_norm(x_star));
}

/// Per-step residual ||s/(lambda alpha_bar) - G(x*) s|| / ||s|| with the
/// Hessian action taken at the known minimizer by central differences. It
/// tends to 0 exactly when convergence is superlinear. Zero-length steps are
/// skipped with a NaN marker at their index.
inline std::vector<double> superlinear_residuals(const std::vector<TracePoint>& points,
                                                 const Vector& x_star, const Problem& problem) {
  std::vector<double> out;
  if (points.size() < 2) return out;
  const double h = hessian_fd_step(x_star);
  out.reserve(points.size() - 1);
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    Vector s(x_star.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = points[k + 1].x[i] - points[k].x[i];
    const double sn = norm2(s);
    if (!(sn > 0.0)) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const Vector hs = fd_hessian_vec(problem, x_star, s, h);
    const double scale = 1.0 / (points[k].lambda * points[k].alpha_bar);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double r = scale * s[i] - hs[i];
      acc += r * r;
    }
    out.push_back(std::sqrt(acc) / sn);
  }
  return out;
}

inline bool monotone_descent(const std::vector<double>& f_values) {
  for (std::size_t k = 0; k + 1 < f_values.size(); ++k) {
    if (f_values[k + 1] > f_values[k]) return false;
  }
  return true;
}

struct RateReport {
  std::optional<double> root_rate;
  std::vector<double> superlinear_ratios;
  /// NaN marks steps that were skipped (zero length).
  std::vector<double> superlinear_residuals;
  bool monotone = true;
};

/// Post-hoc rate analysis of a solve against the problem's known minimizer.
/// Needs SolverConfig::record_points to have been set.
inline RateReport rate_report(const SolverResult& res, const Problem& problem) {
  if (!problem.known_opt_point)
    throw std::invalid_argument("rate_report: problem has no known optimum point");
  if (res.points.empty())
    throw std::invalid_argument("rate_report: solve was run without record_points");
  const Vector& x_star = *problem.known_opt_point;

  std::vector<double> errors;
  errors.reserve(res.points.size());
  for (const auto& pt : res.points) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      const double d = pt[i] - x_star[i];
      acc += d * d;
    }
    errors.push_back(std::sqrt(acc));
  }

  RateReport report;
  report.root_rate = root_rate(errors);

  std::vector<double> positive;
  for (double e : errors) {
    if (!(e > 0.0)) break;
    positive.push_back(e);
  }
  if (positive.size() >= 2) report.superlinear_ratios = superlinear_ratios(positive);

  if (res.points.size() == res.trace.size() + 1) {
    std::vector<TracePoint> tps;
    tps.reserve(res.points.size());
    for (std::size_t k = 0; k < res.trace.size(); ++k)
      tps.push_back({res.points[k], res.trace[k].lambda, res.trace[k].alpha_bar});
    tps.push_back({res.points.back(), 1.0, 1.0});
    report.superlinear_residuals = superlinear_residuals(tps, x_star, problem);
  }

  std::vector<double> fs;
  fs.reserve(res.trace.size() + 1);
  for (const auto& r : res.trace) fs.push_back(r.f);
  fs.push_back(res.f_final);
  report.monotone = monotone_descent(fs);
  return report;
}

/// CSV block appended after a trace; starts with the section header line.
inline void write_rate_report_csv(std::ostream& out, const RateReport& r) {
  out << "# diagnostics\n";
  out << "root_rate," << (r.root_rate ? csv_real(*r.root_rate) : "NA") << '\n';
  out << "monotone," << (r.monotone ? 1 : 0) << '\n';
  out << "k,superlinear_ratio,superlinear_residual\n";
  const std::size_t rows = std::max(r.superlinear_ratios.size(), r.superlinear_residuals.size());
  for (std::size_t k = 0; k < rows; ++k) {
    out << k << ',';
    out << (k < r.superlinear_ratios.size() ? csv_real(r.superlinear_ratios[k]) : "NA");
    out << ',';
    out << (k < r.superlinear_residuals.size() ? csv_real(r.superlinear_residuals[k]) : "NA");
    out << '\n';
  }
}

}  // namespace specgrad
