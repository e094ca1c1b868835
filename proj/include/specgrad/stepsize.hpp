#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specgrad/errors.hpp"
#include "specgrad/vec.hpp"

namespace specgrad {

enum class StepSizeRule { BB1, BB2, TBB1, TBB2, TBB1P, TBB2P };

inline const char* rule_name(StepSizeRule r) {
  switch (r) {
    case StepSizeRule::BB1: return "bb1";
    case StepSizeRule::BB2: return "bb2";
    case StepSizeRule::TBB1: return "tbb1";
    case StepSizeRule::TBB2: return "tbb2";
    case StepSizeRule::TBB1P: return "tbb1p";
    case StepSizeRule::TBB2P: return "tbb2p";
  }
  return "?";
}

/// Case-insensitive rule lookup: bb1, bb2, tbb1, tbb2, tbb1p, tbb2p.
inline std::optional<StepSizeRule> parse_rule(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "bb1") return StepSizeRule::BB1;
  if (s == "bb2") return StepSizeRule::BB2;
  if (s == "tbb1") return StepSizeRule::TBB1;
  if (s == "tbb2") return StepSizeRule::TBB2;
  if (s == "tbb1p") return StepSizeRule::TBB1P;
  if (s == "tbb2p") return StepSizeRule::TBB2P;
  return std::nullopt;
}

inline const std::vector<StepSizeRule>& all_rules() {
  static const std::vector<StepSizeRule> rules = {StepSizeRule::BB1,   StepSizeRule::BB2,
                                                  StepSizeRule::TBB1,  StepSizeRule::TBB2,
                                                  StepSizeRule::TBB1P, StepSizeRule::TBB2P};
  return rules;
}

/// Bounds for the step-size safeguard band.
struct SafeguardConfig {
  double alpha_min = 0.006;
  double alpha_max = 100.0;
  double sigma1 = 0.52;
  double sigma2 = 1.2;

  void validate() const {
    if (!(0.0 < alpha_min && alpha_min < alpha_max))
      throw std::invalid_argument("safeguard: need 0 < alpha_min < alpha_max");
    if (!(0.0 < sigma1 && sigma1 < 1.0)) throw std::invalid_argument("safeguard: sigma1 must be in (0,1)");
    if (!(1.0 < sigma2 && sigma2 < 2.0)) throw std::invalid_argument("safeguard: sigma2 must be in (1,2)");
  }
};

/// The three most recent iterates and gradients. The difference pairs
/// s1 = x_curr - x_prev, s2 = x_curr - x_prev2, y1 = g_curr - g_prev,
/// y2 = g_curr - g_prev2 are kept in sync with the stored vectors.
class IterateHistory {
 public:
  IterateHistory(Vector x_curr, Vector x_prev, Vector x_prev2, Vector g_curr, Vector g_prev,
                 Vector g_prev2)
      : x_curr_(std::move(x_curr)),
        x_prev_(std::move(x_prev)),
        x_prev2_(std::move(x_prev2)),
        g_curr_(std::move(g_curr)),
        g_prev_(std::move(g_prev)),
        g_prev2_(std::move(g_prev2)) {
    validate();
    refresh_diffs();
  }

  /// History at the start of a run: both older iterates coincide with x0, so
  /// the first update yields s2 = s1 and y2 = y1.
  static IterateHistory seeded(const Vector& x0, const Vector& g0) {
    return IterateHistory(x0, x0, x0, g0, g0, g0);
  }

  /// Shift the window one iteration forward.
  void push(Vector x_new, Vector g_new) {
    x_prev2_ = std::move(x_prev_);
    x_prev_ = std::move(x_curr_);
    x_curr_ = std::move(x_new);
    g_prev2_ = std::move(g_prev_);
    g_prev_ = std::move(g_curr_);
    g_curr_ = std::move(g_new);
    validate();
    refresh_diffs();
  }

  const Vector& x_curr() const { return x_curr_; }
  const Vector& x_prev() const { return x_prev_; }
  const Vector& x_prev2() const { return x_prev2_; }
  const Vector& g_curr() const { return g_curr_; }
  const Vector& g_prev() const { return g_prev_; }
  const Vector& g_prev2() const { return g_prev2_; }
  const Vector& s1() const { return s1_; }
  const Vector& s2() const { return s2_; }
  const Vector& y1() const { return y1_; }
  const Vector& y2() const { return y2_; }
  std::size_t dim() const { return x_curr_.size(); }

 private:
  void validate() const {
    const std::size_t n = x_curr_.size();
    if (n < 1) throw std::invalid_argument("IterateHistory: dimension must be >= 1");
    for (const Vector* v : {&x_prev_, &x_prev2_, &g_curr_, &g_prev_, &g_prev2_}) {
      if (v->size() != n) throw std::invalid_argument("IterateHistory: vectors must share one dimension");
    }
    for (const Vector* v : {&x_curr_, &x_prev_, &x_prev2_, &g_curr_, &g_prev_, &g_prev2_}) {
      if (!all_finite(*v)) throw std::invalid_argument("IterateHistory: vectors must be finite");
    }
  }

  void refresh_diffs() {
    const std::size_t n = x_curr_.size();
    s1_.resize(n);
    s2_.resize(n);
    y1_.resize(n);
    y2_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s1_[i] = x_curr_[i] - x_prev_[i];
      s2_[i] = x_curr_[i] - x_prev2_[i];
      y1_[i] = g_curr_[i] - g_prev_[i];
      y2_[i] = g_curr_[i] - g_prev2_[i];
    }
  }

  Vector x_curr_, x_prev_, x_prev2_;
  Vector g_curr_, g_prev_, g_prev2_;
  Vector s1_, s2_, y1_, y2_;
};

namespace detail {

/// A denominator this close to zero, relative to the numerator scale, makes
/// the quotient numerically meaningless.
inline bool negligible_denominator(double den, double num_scale) {
  return std::abs(den) <= 1e-12 * (1.0 + std::abs(num_scale));
}

/// Below this relative gap the two two-point step values are treated as equal.
inline constexpr double mix_coincidence_tol = 1e-10;

inline bool bb_values_coincide(double a1, double a2) {
  return std::abs(a1 - a2) <= mix_coincidence_tol * std::max(std::abs(a1), std::abs(a2));
}

}  // namespace detail

/// Two-point step ||s1||^2 / (s1'y1); empty when the curvature is negligible.
inline std::optional<double> bb1(const IterateHistory& h) {
  const double num = dot(h.s1(), h.s1());
  const double den = dot(h.s1(), h.y1());
  if (detail::negligible_denominator(den, num)) return std::nullopt;
  return num / den;
}

/// Two-point step (s1'y1) / ||y1||^2.
inline std::optional<double> bb2(const IterateHistory& h) {
  const double num = dot(h.s1(), h.y1());
  const double den = dot(h.y1(), h.y1());
  if (detail::negligible_denominator(den, num)) return std::nullopt;
  return num / den;
}

/// Three-point step (||s1||^2 + ||s2||^2) / (s1'y1 + s2'y2).
inline std::optional<double> tbb1(const IterateHistory& h) {
  const double num = dot(h.s1(), h.s1()) + dot(h.s2(), h.s2());
  const double den = dot(h.s1(), h.y1()) + dot(h.s2(), h.y2());
  if (detail::negligible_denominator(den, num)) return std::nullopt;
  return num / den;
}

/// Three-point step (s1'y1 + s2'y2) / (||y1||^2 + ||y2||^2).
inline std::optional<double> tbb2(const IterateHistory& h) {
  const double num = dot(h.s1(), h.y1()) + dot(h.s2(), h.y2());
  const double den = dot(h.y1(), h.y1()) + dot(h.y2(), h.y2());
  if (detail::negligible_denominator(den, num)) return std::nullopt;
  return num / den;
}

enum class MixVariant { One, Two };

/// Weight for the affine combination of the two two-point steps, fitted so the
/// combined scalar matches the older secant pair. Not clamped to [0,1]; the
/// safeguard bounds the final step.
inline std::optional<double> mix_weight(const IterateHistory& h, MixVariant v) {
  const auto a1 = bb1(h);
  const auto a2 = bb2(h);
  if (!a1 || !a2) return std::nullopt;
  if (detail::bb_values_coincide(*a1, *a2)) return std::nullopt;
  double inner;
  if (v == MixVariant::One) {
    const double num = dot(h.s2(), h.s2());
    const double den = dot(h.y2(), h.s2());
    if (detail::negligible_denominator(den, num)) return std::nullopt;
    inner = num / den;
  } else {
    const double num = dot(h.y2(), h.s2());
    const double den = dot(h.y2(), h.y2());
    if (detail::negligible_denominator(den, num)) return std::nullopt;
    inner = num / den;
  }
  return (inner - *a2) / (*a1 - *a2);
}

/// Mixed three-point step lambda*bb1 + (1-lambda)*bb2. When the two two-point
/// values nearly coincide the mix is immaterial and bb1 is returned directly.
inline std::optional<double> tbb_prime(const IterateHistory& h, MixVariant v) {
  const auto a1 = bb1(h);
  const auto a2 = bb2(h);
  if (!a1 || !a2) return std::nullopt;
  if (detail::bb_values_coincide(*a1, *a2)) return *a1;
  const auto lam = mix_weight(h, v);
  if (!lam) return std::nullopt;
  return *lam * *a1 + (1.0 - *lam) * *a2;
}

/// Scalar secant estimate s1'y1 / ||y1||^2 feeding the safeguard band.
inline std::optional<double> beta(const IterateHistory& h) { return bb2(h); }

inline std::optional<double> raw_step(StepSizeRule rule, const IterateHistory& h) {
  switch (rule) {
    case StepSizeRule::BB1: return bb1(h);
    case StepSizeRule::BB2: return bb2(h);
    case StepSizeRule::TBB1: return tbb1(h);
    case StepSizeRule::TBB2: return tbb2(h);
    case StepSizeRule::TBB1P: return tbb_prime(h, MixVariant::One);
    case StepSizeRule::TBB2P: return tbb_prime(h, MixVariant::Two);
  }
  return std::nullopt;
}

/// Project a raw step into the band [max(alpha_min, sigma1|beta|),
/// min(alpha_max, sigma2|beta|)], with the absolute bounds applied after the
/// band: a band lying entirely outside [alpha_min, alpha_max] collapses to
/// the nearest bound. Missing beta falls back to [alpha_min, alpha_max]; a
/// missing raw step maps to the top of the active interval. Total: the result
/// is always positive and finite.
inline double safeguard(std::optional<double> alpha_raw, std::optional<double> beta_val,
                        const SafeguardConfig& cfg) {
  cfg.validate();
  double lo = cfg.alpha_min;
  double hi = cfg.alpha_max;
  if (beta_val) {
    const double b = std::abs(*beta_val);
    lo = std::clamp(std::max(cfg.alpha_min, cfg.sigma1 * b), cfg.alpha_min, cfg.alpha_max);
    hi = std::clamp(std::min(cfg.alpha_max, cfg.sigma2 * b), cfg.alpha_min, cfg.alpha_max);
    // sigma1 < sigma2 guarantees lo <= hi after both are clamped
  }
  if (!alpha_raw) return hi;
  return std::clamp(*alpha_raw, lo, hi);
}

}  // namespace specgrad
