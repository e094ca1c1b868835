#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "specgrad/csv.hpp"
#include "specgrad/linesearch.hpp"
#include "specgrad/problem.hpp"
#include "specgrad/stepsize.hpp"

namespace specgrad {

enum class TolMode { Relative, Absolute };

struct SolverConfig {
  StepSizeRule rule = StepSizeRule::TBB1;
  SafeguardConfig safeguard;
  LineSearchConfig linesearch;
  double tol = 1e-6;
  TolMode tol_mode = TolMode::Relative;
  std::size_t max_iters = 10000;
  double max_time_seconds = 600.0;
  double alpha0 = 1.0;  ///< safeguarded step used for the first direction
  /// Keep every iterate in SolverResult::points (needed for rate diagnostics).
  bool record_points = false;

  void validate() const {
    safeguard.validate();
    linesearch.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be positive");
    if (!(max_time_seconds > 0.0)) throw std::invalid_argument("solver: max_time_seconds must be positive");
    if (!(alpha0 >= safeguard.alpha_min && alpha0 <= safeguard.alpha_max))
      throw std::invalid_argument("solver: alpha0 must lie in [alpha_min, alpha_max]");
  }
};

struct IterationRecord {
  std::size_t k = 0;
  double f = 0.0;          ///< objective at x_k, before the step
  double gnorm = 0.0;      ///< gradient norm at x_k
  double alpha_bar = 0.0;  ///< safeguarded step used for the direction
  double lambda = 1.0;     ///< accepted line-search step
  int p = 0;               ///< backtrack count
};

enum class SolveStatus { Converged, MaxIters, Timeout, LineSearchFail, NonFiniteValue };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::Timeout: return "Timeout";
    case SolveStatus::LineSearchFail: return "LineSearchFail";
    case SolveStatus::NonFiniteValue: return "NonFiniteValue";
  }
  return "?";
}

inline std::optional<SolveStatus> parse_status(const std::string& s) {
  if (s == "Converged") return SolveStatus::Converged;
  if (s == "MaxIters") return SolveStatus::MaxIters;
  if (s == "Timeout") return SolveStatus::Timeout;
  if (s == "LineSearchFail") return SolveStatus::LineSearchFail;
  if (s == "NonFiniteValue") return SolveStatus::NonFiniteValue;
  return std::nullopt;
}

struct SolverResult {
  SolveStatus status = SolveStatus::MaxIters;
  Vector x_final;
  double f_final = 0.0;
  double gnorm_final = 0.0;
  std::vector<IterationRecord> trace;
  std::size_t n_f_evals = 0;
  std::size_t n_g_evals = 0;
  double wall_time_seconds = 0.0;
  /// x_0 through the final iterate, populated when SolverConfig::record_points
  /// is set; aligned so points[k] pairs with trace[k].
  std::vector<Vector> points;
};

/// Steepest-descent direction scaled by the safeguarded step: d = -alpha_bar g.
/// Consequently ||d|| = alpha_bar ||g|| and g'd = -alpha_bar ||g||^2.
inline Vector direction(double alpha_bar, const Vector& g) {
  if (!(alpha_bar > 0.0)) throw std::invalid_argument("direction: alpha_bar must be positive");
  Vector d(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) d[i] = -alpha_bar * g[i];
  return d;
}

/// Stopping test. Relative mode: ||g_k|| < tol ||g_0|| (strict); a zero
/// starting gradient means the start point is already stationary, so stop.
/// Absolute mode: ||g_k|| <= tol.
inline bool check_stop(double gnorm_k, double gnorm_0, const SolverConfig& cfg) {
  if (cfg.tol_mode == TolMode::Absolute) return gnorm_k <= cfg.tol;
  if (gnorm_0 == 0.0) return true;
  return gnorm_k < cfg.tol * gnorm_0;
}

/// Run the safeguarded spectral gradient loop: scaled steepest-descent
/// direction, relaxed backtracking search, three-iterate history update, raw
/// spectral step, safeguard.
inline SolverResult minimize(const Problem& problem, const SolverConfig& cfg) {
  cfg.validate();
  if (problem.dim < 1 || problem.start_point.size() != problem.dim)
    throw std::invalid_argument("minimize: problem start point does not match its dimension");

  const auto t_start = std::chrono::steady_clock::now();
  const auto elapsed = [&t_start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  SolverResult res;
  std::size_t n_f = 0, n_g = 0;
  const auto f_eval = [&](const Vector& v) {
    ++n_f;
    return problem.value_at(v);
  };
  const auto g_eval = [&](const Vector& v) {
    ++n_g;
    return problem.gradient_at(v);
  };

  Vector x = problem.start_point;
  double fx = f_eval(x);
  Vector g = g_eval(x);
  double gnorm = all_finite(g) ? norm2(g) : std::numeric_limits<double>::quiet_NaN();

  const auto finish = [&](SolveStatus status) {
    res.status = status;
    res.x_final = x;
    res.f_final = fx;
    res.gnorm_final = gnorm;
    res.n_f_evals = n_f;
    res.n_g_evals = n_g;
    res.wall_time_seconds = elapsed();
    return res;
  };

  if (!std::isfinite(fx) || !all_finite(g)) return finish(SolveStatus::NonFiniteValue);
  const double gnorm0 = gnorm;
  if (cfg.record_points) res.points.push_back(x);
  if (check_stop(gnorm, gnorm0, cfg)) return finish(SolveStatus::Converged);

  IterateHistory hist = IterateHistory::seeded(x, g);
  double alpha_bar = cfg.alpha0;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    const Vector d = direction(alpha_bar, g);
    LineSearchOutcome ls;
    try {
      ls = search(f_eval, x, fx, g, d, alpha_bar, cfg.linesearch);
    } catch (const line_search_error&) {
      return finish(SolveStatus::LineSearchFail);
    }
    res.trace.push_back({k, fx, gnorm, alpha_bar, ls.lambda, ls.p});

    Vector x_new(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + ls.lambda * d[i];
    Vector g_new = g_eval(x_new);
    x = std::move(x_new);
    fx = ls.f_new;
    if (!all_finite(g_new)) {
      gnorm = std::numeric_limits<double>::quiet_NaN();
      return finish(SolveStatus::NonFiniteValue);
    }
    g = std::move(g_new);
    gnorm = norm2(g);
    if (cfg.record_points) res.points.push_back(x);

    hist.push(x, g);
    alpha_bar = safeguard(raw_step(cfg.rule, hist), beta(hist), cfg.safeguard);

    if (check_stop(gnorm, gnorm0, cfg)) return finish(SolveStatus::Converged);
    if (elapsed() > cfg.max_time_seconds) return finish(SolveStatus::Timeout);
  }
  return finish(SolveStatus::MaxIters);
}

/// Trace CSV: header k,f,gnorm,alpha_bar,lambda,p; full double precision.
inline void write_trace_csv(std::ostream& out, const SolverResult& res) {
  out << "k,f,gnorm,alpha_bar,lambda,p\n";
  for (const auto& r : res.trace) {
    out << r.k << ',' << csv_real(r.f) << ',' << csv_real(r.gnorm) << ',' << csv_real(r.alpha_bar)
        << ',' << csv_real(r.lambda) << ',' << r.p << '\n';
  }
}

}  // namespace specgrad
