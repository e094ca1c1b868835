#pragma once

#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "specgrad/csv.hpp"
#include "specgrad/problems.hpp"
#include "specgrad/solver.hpp"

namespace specgrad {

struct BenchRecord {
  std::string problem;
  std::size_t n = 0;
  std::string rule;
  SolveStatus status = SolveStatus::MaxIters;
  std::size_t iters = 0;
  std::size_t f_evals = 0;
  std::size_t g_evals = 0;
  double time_seconds = 0.0;
  /// |f_final - f*| when the problem has a known optimum, otherwise empty.
  std::optional<double> f_gap;
};

/// One record per (problem, rule) cell, problem-major. Individual failures are
/// captured in the record's status; the suite never aborts on a single cell.
inline std::vector<BenchRecord> run_suite(const std::vector<Problem>& problems,
                                          const std::vector<StepSizeRule>& rules,
                                          const SolverConfig& base_cfg) {
  if (problems.empty() || rules.empty())
    throw std::invalid_argument("run_suite: problem and rule lists must be nonempty");
  std::vector<BenchRecord> records;
  records.reserve(problems.size() * rules.size());
  for (const auto& prob : problems) {
    for (const auto rule : rules) {
      SolverConfig cfg = base_cfg;
      cfg.rule = rule;
      BenchRecord rec;
      rec.problem = prob.name;
      rec.n = prob.dim;
      rec.rule = rule_name(rule);
      try {
        const SolverResult res = minimize(prob, cfg);
        rec.status = res.status;
        rec.iters = res.trace.size();
        rec.f_evals = res.n_f_evals;
        rec.g_evals = res.n_g_evals;
        rec.time_seconds = res.wall_time_seconds;
        if (prob.known_opt_value) rec.f_gap = std::abs(res.f_final - *prob.known_opt_value);
      } catch (const std::exception&) {
        rec.status = SolveStatus::NonFiniteValue;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

enum class ProfileMetric { Iters, FEvals, GEvals, Time };

inline const char* metric_name(ProfileMetric m) {
  switch (m) {
    case ProfileMetric::Iters: return "iters";
    case ProfileMetric::FEvals: return "f_evals";
    case ProfileMetric::GEvals: return "g_evals";
    case ProfileMetric::Time: return "time";
  }
  return "?";
}

inline std::optional<ProfileMetric> parse_metric(const std::string& s) {
  if (s == "iters") return ProfileMetric::Iters;
  if (s == "f_evals") return ProfileMetric::FEvals;
  if (s == "g_evals") return ProfileMetric::GEvals;
  if (s == "time") return ProfileMetric::Time;
  return std::nullopt;
}

struct PerformanceProfile {
  ProfileMetric metric = ProfileMetric::Iters;
  std::vector<std::string> solver_names;
  /// ratios[p][s] >= 1, +inf for failed cells.
  std::vector<std::vector<double>> ratios;
  std::vector<double> tau_grid;
  /// curves[s][t] = fraction of problems with ratio <= tau_grid[t].
  std::vector<std::vector<double>> curves;
};

/// 50 log-spaced points in [1, 16].
inline std::vector<double> default_tau_grid() {
  std::vector<double> grid(50);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = std::exp(std::log(16.0) * static_cast<double>(i) / static_cast<double>(grid.size() - 1));
  grid.front() = 1.0;
  grid.back() = 16.0;
  return grid;
}

namespace detail {

inline double metric_value(const BenchRecord& r, ProfileMetric m) {
  switch (m) {
    case ProfileMetric::Iters: return static_cast<double>(r.iters);
    case ProfileMetric::FEvals: return static_cast<double>(r.f_evals);
    case ProfileMetric::GEvals: return static_cast<double>(r.g_evals);
    case ProfileMetric::Time: return r.time_seconds;
  }
  return 0.0;
}

/// Smallest meaningful metric amount; zero-cost cells are clamped up to it so
/// ratios stay finite and >= 1.
inline double metric_unit(ProfileMetric m) {
  return m == ProfileMetric::Time ? 1e-9 : 1.0;
}

}  // namespace detail

/// Cost ratios against the per-problem best successful solver and the
/// cumulative curves P_s(tau). Failed cells never count as solved but their
/// problem still counts in the denominator.
inline PerformanceProfile perf_profile(const std::vector<BenchRecord>& records, ProfileMetric metric,
                                       const std::vector<double>& tau_grid) {
  if (tau_grid.empty()) throw std::invalid_argument("perf_profile: tau grid must be nonempty");
  if (tau_grid.front() != 1.0) throw std::invalid_argument("perf_profile: tau grid must start at 1");
  for (std::size_t i = 0; i + 1 < tau_grid.size(); ++i) {
    if (!(tau_grid[i] < tau_grid[i + 1]))
      throw std::invalid_argument("perf_profile: tau grid must be increasing");
  }
  if (records.empty()) throw std::invalid_argument("perf_profile: no records");

  std::vector<std::string> prob_keys;
  std::vector<std::string> solver_names;
  std::map<std::string, std::size_t> prob_index;
  std::map<std::string, std::size_t> solver_index;
  for (const auto& r : records) {
    const std::string key = r.problem + "@" + std::to_string(r.n);
    if (prob_index.emplace(key, prob_keys.size()).second) prob_keys.push_back(key);
    if (solver_index.emplace(r.rule, solver_names.size()).second) solver_names.push_back(r.rule);
  }

  const std::size_t np = prob_keys.size();
  const std::size_t ns = solver_names.size();
  std::vector<std::vector<const BenchRecord*>> grid(np, std::vector<const BenchRecord*>(ns, nullptr));
  for (const auto& r : records) {
    const std::size_t p = prob_index.at(r.problem + "@" + std::to_string(r.n));
    const std::size_t s = solver_index.at(r.rule);
    if (grid[p][s]) throw std::invalid_argument("perf_profile: duplicate cell " + r.problem + "/" + r.rule);
    grid[p][s] = &r;
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (!grid[p][s])
        throw missing_cell_error("perf_profile: missing cell (" + prob_keys[p] + ", " +
                                 solver_names[s] + ")");
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  const double unit = detail::metric_unit(metric);
  PerformanceProfile prof;
  prof.metric = metric;
  prof.solver_names = solver_names;
  prof.tau_grid = tau_grid;
  prof.ratios.assign(np, std::vector<double>(ns, inf));
  for (std::size_t p = 0; p < np; ++p) {
    double best = inf;
    for (std::size_t s = 0; s < ns; ++s) {
      if (grid[p][s]->status == SolveStatus::Converged)
        best = std::min(best, std::max(detail::metric_value(*grid[p][s], metric), unit));
    }
    if (best == inf) continue;  // no solver earns this problem
    for (std::size_t s = 0; s < ns; ++s) {
      if (grid[p][s]->status == SolveStatus::Converged)
        prof.ratios[p][s] = std::max(detail::metric_value(*grid[p][s], metric), unit) / best;
    }
  }

  prof.curves.assign(ns, std::vector<double>(tau_grid.size(), 0.0));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t t = 0; t < tau_grid.size(); ++t) {
      std::size_t solved = 0;
      for (std::size_t p = 0; p < np; ++p) {
        if (prof.ratios[p][s] <= tau_grid[t]) ++solved;
      }
      prof.curves[s][t] = static_cast<double>(solved) / static_cast<double>(np);
    }
  }
  return prof;
}

inline constexpr const char* k_records_header = "problem,n,rule,status,iters,f_evals,g_evals,time_s,f_gap";

inline void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << k_records_header << '\n';
  for (const auto& r : records) {
    out << r.problem << ',' << r.n << ',' << r.rule << ',' << status_name(r.status) << ',' << r.iters
        << ',' << r.f_evals << ',' << r.g_evals << ',' << csv_real(r.time_seconds) << ','
        << (r.f_gap ? csv_real(*r.f_gap) : "NA") << '\n';
  }
}

inline void export_records(const std::vector<BenchRecord>& records, const std::string& path) {
  auto out = open_output(path);
  write_records_csv(out, records);
  if (!out) throw file_error("failed writing records to " + path);
}

inline void write_profile_csv(std::ostream& out, const PerformanceProfile& prof) {
  out << "tau";
  for (const auto& name : prof.solver_names) out << ',' << name;
  out << '\n';
  for (std::size_t t = 0; t < prof.tau_grid.size(); ++t) {
    out << csv_real(prof.tau_grid[t]);
    for (std::size_t s = 0; s < prof.solver_names.size(); ++s) out << ',' << csv_real(prof.curves[s][t]);
    out << '\n';
  }
}

inline void export_profile(const PerformanceProfile& prof, const std::string& path) {
  auto out = open_output(path);
  write_profile_csv(out, prof);
  if (!out) throw file_error("failed writing profile to " + path);
}

/// Parse a records CSV produced by export_records.
inline std::vector<BenchRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw file_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != k_records_header)
    throw std::invalid_argument("records CSV: bad header in " + path);
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw std::invalid_argument("records CSV: bad row: " + line);
    BenchRecord r;
    r.problem = fields[0];
    r.n = static_cast<std::size_t>(std::stoull(fields[1]));
    r.rule = fields[2];
    const auto st = parse_status(fields[3]);
    if (!st) throw std::invalid_argument("records CSV: unknown status: " + fields[3]);
    r.status = *st;
    r.iters = static_cast<std::size_t>(std::stoull(fields[4]));
    r.f_evals = static_cast<std::size_t>(std::stoull(fields[5]));
    r.g_evals = static_cast<std::size_t>(std::stoull(fields[6]));
    r.time_seconds = std::stod(fields[7]);
    if (fields[8] != "NA") r.f_gap = std::stod(fields[8]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace specgrad
