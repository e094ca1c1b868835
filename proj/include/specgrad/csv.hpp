#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "specgrad/errors.hpp"

namespace specgrad {

/// Render a real with 17 significant digits (enough to round-trip a double).
/// Infinities become "inf"/"-inf", NaN becomes "NA".
inline std::string csv_real(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw file_error("cannot open for writing: " + path);
  return out;
}

}  // namespace specgrad
