#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "specgrad/problem.hpp"

namespace specgrad {
namespace detail {

inline void require_dim(bool ok, const char* name, const char* rule, std::size_t n) {
  if (!ok)
    throw invalid_dimension_error(std::string(name) + " requires " + rule + "; got n=" + std::to_string(n));
}

inline void check_input(const Vector& x, std::size_t n) {
  if (x.size() != n)
    throw std::invalid_argument("objective input has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(n));
}

}  // namespace detail

// f = sum over consecutive pairs (a,b) of (b - a^2)^2 + (1 - a)^2
// start (-1.2, 1, ...), minimum 0 at all ones
inline Problem make_ext_rosenbrock(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_rosenbrock", "even n >= 2", n);
  Problem p;
  p.name = "ext_rosenbrock";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double t = x[i + 1] - x[i] * x[i];
      const double u = 1.0 - x[i];
      f += t * t + u * u;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double t = x[i + 1] - x[i] * x[i];
      g[i] = -4.0 * x[i] * t - 2.0 * (1.0 - x[i]);
      g[i + 1] = 2.0 * t;
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  for (std::size_t i = 0; i < n; i += 2) p.start_point[i] = -1.2;
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 1.0);
  return p;
}

// Blocks of ten: f = sum over blocks of (1 - b0)^2 + (1 - b9)^2
//                    + sum_{j=0..8} (bj^2 - b_{j+1})^2
// start all -2, minimum 0 at all ones
inline Problem make_chained_block10(std::size_t n) {
  detail::require_dim(n >= 10 && n % 10 == 0, "chained_block10", "n a positive multiple of 10", n);
  Problem p;
  p.name = "chained_block10";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t b = 0; b < n; b += 10) {
      const double u = 1.0 - x[b];
      const double v = 1.0 - x[b + 9];
      f += u * u + v * v;
      for (std::size_t j = b; j < b + 9; ++j) {
        const double t = x[j] * x[j] - x[j + 1];
        f += t * t;
      }
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n, 0.0);
    for (std::size_t b = 0; b < n; b += 10) {
      g[b] -= 2.0 * (1.0 - x[b]);
      g[b + 9] -= 2.0 * (1.0 - x[b + 9]);
      for (std::size_t j = b; j < b + 9; ++j) {
        const double t = x[j] * x[j] - x[j + 1];
        g[j] += 4.0 * x[j] * t;
        g[j + 1] -= 2.0 * t;
      }
    }
    return g;
  };
  p.start_point.assign(n, -2.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 1.0);
  return p;
}

// f = sum over pairs of 100 (b - a^3)^2 + (1 - a)^2
inline Problem make_ext_white_holst(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_white_holst", "even n >= 2", n);
  Problem p;
  p.name = "ext_white_holst";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double t = x[i + 1] - x[i] * x[i] * x[i];
      const double u = 1.0 - x[i];
      f += 100.0 * t * t + u * u;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double t = x[i + 1] - x[i] * x[i] * x[i];
      g[i] = -600.0 * x[i] * x[i] * t - 2.0 * (1.0 - x[i]);
      g[i + 1] = 200.0 * t;
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  for (std::size_t i = 0; i < n; i += 2) p.start_point[i] = -1.2;
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 1.0);
  return p;
}

// f = sum over pairs of (1.5 - a(1-b))^2 + (2.25 - a(1-b^2))^2 + (2.625 - a(1-b^3))^2
// minimum 0 at pairs (3, 0.5)
inline Problem make_ext_beale(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_beale", "even n >= 2", n);
  Problem p;
  p.name = "ext_beale";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double a = x[i], b = x[i + 1];
      const double r1 = 1.5 - a * (1.0 - b);
      const double r2 = 2.25 - a * (1.0 - b * b);
      const double r3 = 2.625 - a * (1.0 - b * b * b);
      f += r1 * r1 + r2 * r2 + r3 * r3;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double a = x[i], b = x[i + 1];
      const double r1 = 1.5 - a * (1.0 - b);
      const double r2 = 2.25 - a * (1.0 - b * b);
      const double r3 = 2.625 - a * (1.0 - b * b * b);
      g[i] = -2.0 * (r1 * (1.0 - b) + r2 * (1.0 - b * b) + r3 * (1.0 - b * b * b));
      g[i + 1] = 2.0 * a * (r1 + 2.0 * b * r2 + 3.0 * b * b * r3);
    }
    return g;
  };
  p.start_point.assign(n, 0.8);
  for (std::size_t i = 0; i < n; i += 2) p.start_point[i] = 1.0;
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 0.5);
  for (std::size_t i = 0; i < n; i += 2) (*p.known_opt_point)[i] = 3.0;
  return p;
}

// f = sum over pairs of (a^2 + b - 11)^2 + (a + b^2 - 7)^2, minimum 0 at (3, 2)
inline Problem make_ext_himmelblau(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_himmelblau", "even n >= 2", n);
  Problem p;
  p.name = "ext_himmelblau";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double r1 = x[i] * x[i] + x[i + 1] - 11.0;
      const double r2 = x[i] + x[i + 1] * x[i + 1] - 7.0;
      f += r1 * r1 + r2 * r2;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double r1 = x[i] * x[i] + x[i + 1] - 11.0;
      const double r2 = x[i] + x[i + 1] * x[i + 1] - 7.0;
      g[i] = 4.0 * x[i] * r1 + 2.0 * r2;
      g[i + 1] = 2.0 * r1 + 4.0 * x[i + 1] * r2;
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 2.0);
  for (std::size_t i = 0; i < n; i += 2) (*p.known_opt_point)[i] = 3.0;
  return p;
}

// f = sum over pairs of (a + b - 3)^2 + (a - b + 1)^4, minimum 0 at (1, 2)
inline Problem make_ext_tridiag1(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_tridiag1", "even n >= 2", n);
  Problem p;
  p.name = "ext_tridiag1";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double r1 = x[i] + x[i + 1] - 3.0;
      const double r2 = x[i] - x[i + 1] + 1.0;
      f += r1 * r1 + r2 * r2 * r2 * r2;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double r1 = x[i] + x[i + 1] - 3.0;
      const double r2 = x[i] - x[i + 1] + 1.0;
      const double c = 4.0 * r2 * r2 * r2;
      g[i] = 2.0 * r1 + c;
      g[i + 1] = 2.0 * r1 - c;
    }
    return g;
  };
  p.start_point.assign(n, 2.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 2.0);
  for (std::size_t i = 0; i < n; i += 2) (*p.known_opt_point)[i] = 1.0;
  return p;
}

// f = sum of exp(x_i) - x_i, minimum n at the origin
inline Problem make_raydan2(std::size_t n) {
  detail::require_dim(n >= 1, "raydan2", "n >= 1", n);
  Problem p;
  p.name = "raydan2";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += std::exp(x[i]) - x[i];
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(x[i]) - 1.0;
    return g;
  };
  p.start_point.assign(n, 1.0);
  p.known_opt_value = static_cast<double>(n);
  p.known_opt_point = Vector(n, 0.0);
  return p;
}

// f = sum over pairs of (a^2 + 100 b^2) / 2, minimum 0 at the origin
inline Problem make_diagonal4(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "diagonal4", "even n >= 2", n);
  Problem p;
  p.name = "diagonal4";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) f += 0.5 * (x[i] * x[i] + 100.0 * x[i + 1] * x[i + 1]);
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      g[i] = x[i];
      g[i + 1] = 100.0 * x[i + 1];
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 0.0);
  return p;
}

// f = sum over pairs of (a - 2)^2 + (a - 2)^2 b^2 + (b + 1)^2, minimum 0 at (2, -1)
inline Problem make_ext_denschnb(std::size_t n) {
  detail::require_dim(n >= 2 && n % 2 == 0, "ext_denschnb", "even n >= 2", n);
  Problem p;
  p.name = "ext_denschnb";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
      const double a = x[i] - 2.0;
      const double b = x[i + 1];
      f += a * a + a * a * b * b + (b + 1.0) * (b + 1.0);
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 2) {
      const double a = x[i] - 2.0;
      const double b = x[i + 1];
      g[i] = 2.0 * a + 2.0 * a * b * b;
      g[i + 1] = 2.0 * a * a * b + 2.0 * (b + 1.0);
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, -1.0);
  for (std::size_t i = 0; i < n; i += 2) (*p.known_opt_point)[i] = 2.0;
  return p;
}

// f = (1/2) sum of i x_i^2 - x_n, minimum -1/(2n) at (0, ..., 0, 1/n)
inline Problem make_quad_qf1(std::size_t n) {
  detail::require_dim(n >= 1, "quad_qf1", "n >= 1", n);
  Problem p;
  p.name = "quad_qf1";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += 0.5 * static_cast<double>(i + 1) * x[i] * x[i];
    return f - x[n - 1];
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) * x[i];
    g[n - 1] -= 1.0;
    return g;
  };
  p.start_point.assign(n, 0.5);
  p.known_opt_value = -0.5 / static_cast<double>(n);
  p.known_opt_point = Vector(n, 0.0);
  (*p.known_opt_point)[n - 1] = 1.0 / static_cast<double>(n);
  return p;
}

// f = sum_{i<n} x_i^2 + (x_{i+1} + x_i^2)^2, minimum 0 at the origin
inline Problem make_gen_quartic(std::size_t n) {
  detail::require_dim(n >= 2, "gen_quartic", "n >= 2", n);
  Problem p;
  p.name = "gen_quartic";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double t = x[i + 1] + x[i] * x[i];
      f += x[i] * x[i] + t * t;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double t = x[i + 1] + x[i] * x[i];
      g[i] += 2.0 * x[i] + 4.0 * x[i] * t;
      g[i + 1] += 2.0 * t;
    }
    return g;
  };
  p.start_point.assign(n, 1.0);
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 0.0);
  return p;
}

// f = sum over quadruples (a,b,c,d) of
//     (a + 10b)^2 + 5(c - d)^2 + (b - 2c)^4 + 10(a - d)^4
// singular Hessian at the all-zero minimum
inline Problem make_ext_powell(std::size_t n) {
  detail::require_dim(n >= 4 && n % 4 == 0, "ext_powell", "n a positive multiple of 4", n);
  Problem p;
  p.name = "ext_powell";
  p.dim = n;
  p.value_at = [n](const Vector& x) {
    detail::check_input(x, n);
    double f = 0.0;
    for (std::size_t i = 0; i < n; i += 4) {
      const double r1 = x[i] + 10.0 * x[i + 1];
      const double r2 = x[i + 2] - x[i + 3];
      const double r3 = x[i + 1] - 2.0 * x[i + 2];
      const double r4 = x[i] - x[i + 3];
      f += r1 * r1 + 5.0 * r2 * r2 + r3 * r3 * r3 * r3 + 10.0 * r4 * r4 * r4 * r4;
    }
    return f;
  };
  p.gradient_at = [n](const Vector& x) {
    detail::check_input(x, n);
    Vector g(n);
    for (std::size_t i = 0; i < n; i += 4) {
      const double r1 = x[i] + 10.0 * x[i + 1];
      const double r2 = x[i + 2] - x[i + 3];
      const double r3 = x[i + 1] - 2.0 * x[i + 2];
      const double r4 = x[i] - x[i + 3];
      const double c3 = 4.0 * r3 * r3 * r3;
      const double c4 = 40.0 * r4 * r4 * r4;
      g[i] = 2.0 * r1 + c4;
      g[i + 1] = 20.0 * r1 + c3;
      g[i + 2] = 10.0 * r2 - 2.0 * c3;
      g[i + 3] = -10.0 * r2 - c4;
    }
    return g;
  };
  p.start_point.assign(n, 0.0);
  for (std::size_t i = 0; i < n; i += 4) {
    p.start_point[i] = 3.0;
    p.start_point[i + 1] = -1.0;
    p.start_point[i + 2] = 0.0;
    p.start_point[i + 3] = 1.0;
  }
  p.known_opt_value = 0.0;
  p.known_opt_point = Vector(n, 0.0);
  return p;
}

struct CollectionEntry {
  const char* name;
  const char* dim_rule;
  std::size_t min_dim;
  bool (*dim_ok)(std::size_t);
  Problem (*make)(std::size_t);
};

inline const std::vector<CollectionEntry>& problem_registry() {
  static const std::vector<CollectionEntry> entries = {
      {"ext_rosenbrock", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_rosenbrock},
      {"chained_block10", "n a positive multiple of 10", 10,
       [](std::size_t n) { return n >= 10 && n % 10 == 0; }, &make_chained_block10},
      {"ext_white_holst", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_white_holst},
      {"ext_beale", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_beale},
      {"ext_himmelblau", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_himmelblau},
      {"ext_tridiag1", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_tridiag1},
      {"raydan2", "n >= 1", 1, [](std::size_t n) { return n >= 1; }, &make_raydan2},
      {"diagonal4", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_diagonal4},
      {"ext_denschnb", "even n >= 2", 2, [](std::size_t n) { return n >= 2 && n % 2 == 0; },
       &make_ext_denschnb},
      {"quad_qf1", "n >= 1", 1, [](std::size_t n) { return n >= 1; }, &make_quad_qf1},
      {"gen_quartic", "n >= 2", 2, [](std::size_t n) { return n >= 2; }, &make_gen_quartic},
      {"ext_powell", "n a positive multiple of 4", 4,
       [](std::size_t n) { return n >= 4 && n % 4 == 0; }, &make_ext_powell},
  };
  return entries;
}

/// Build a collection member by name; throws invalid_dimension_error when n
/// violates the member's dimension rule and invalid_argument for unknown names.
inline Problem make_problem(const std::string& name, std::size_t n) {
  for (const auto& e : problem_registry()) {
    if (name == e.name) return e.make(n);
  }
  throw std::invalid_argument("unknown problem: " + name);
}

/// Every collection member compatible with n. Members whose dimension rule
/// rejects n are skipped; a notice per skip goes to `notices` when given.
inline std::vector<Problem> standard_collection(std::size_t n, std::ostream* notices = nullptr) {
  std::size_t smallest = SIZE_MAX;
  for (const auto& e : problem_registry()) smallest = std::min(smallest, e.min_dim);
  if (n < smallest)
    throw invalid_dimension_error("standard_collection: n=" + std::to_string(n) +
                                  " is below the smallest supported dimension " +
                                  std::to_string(smallest));
  std::vector<Problem> out;
  for (const auto& e : problem_registry()) {
    if (e.dim_ok(n)) {
      out.push_back(e.make(n));
    } else if (notices) {
      *notices << "skipping " << e.name << ": requires " << e.dim_rule << " (n=" << n << ")\n";
    }
  }
  return out;
}

}  // namespace specgrad
