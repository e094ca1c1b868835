#pragma once

#include <stdexcept>
#include <string>

namespace specgrad {

struct invalid_dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct nonfinite_evaluation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_descent_direction_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when backtracking exhausts its trial budget; carries the last trial.
struct line_search_error : std::runtime_error {
  line_search_error(const std::string& msg, double last_lambda_, double last_f_, int backtracks_)
      : std::runtime_error(msg), last_lambda(last_lambda_), last_f(last_f_), backtracks(backtracks_) {}
  double last_lambda;
  double last_f;
  int backtracks;
};

struct missing_cell_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct file_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace specgrad
