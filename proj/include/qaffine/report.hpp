#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qaffine/linalg.hpp"

namespace qaffine {

/// Outcome of one named consistency check. passed <=> deviation <= tol.
struct VerificationReport {
  std::string name;
  double deviation = 0.0;
  Complex lambda{1.0, 0.0};
  double tol = 0.0;
  bool passed = false;
  /// Ordered key/value description of the parameter point.
  std::vector<std::pair<std::string, std::string>> context;
};

/// Shortest round-trip decimal ("1.5", "-0.0", "1e-300").
std::string format_double(double v);
/// "a+bi" form accepted back by parse_complex.
std::string format_complex(Complex z);

inline VerificationReport make_report(std::string name, double deviation, Complex lambda, double tol) {
  VerificationReport r;
  r.name = std::move(name);
  r.deviation = deviation;
  r.lambda = lambda;
  r.tol = tol;
  r.passed = deviation <= tol;
  return r;
}

}  // namespace qaffine
