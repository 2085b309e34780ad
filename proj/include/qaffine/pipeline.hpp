#pragma once

// Builds every object a check needs at one parameter point, all solved by the
// engine in a single convention, and runs the check.

#include <optional>
#include <string>
#include <vector>

#include "qaffine/intertwiner.hpp"
#include "qaffine/report.hpp"
#include "qaffine/reps.hpp"
#include "qaffine/verify.hpp"

namespace qaffine {

struct BoundaryPoint {
  int n = 1;
  Complex q{1.0, 0.0};
  double theta_mu = 0.0;
  double theta_nu = 0.0;
  /// Companion (evaluation) leg for the B-matrix checks.
  std::optional<double> theta_lambda;
  BoundaryParams eps;
  Reflection reflection = Reflection::kCrossed;
  double rel_tol = kDefaultRelTol;
};

struct ReflectionSetup {
  EvaluationRep mu, nu, mubar, nubar;
  IntertwinerSolution k_mu, k_nu;
  IntertwinerSolution s_mu_nu, s_mu_nubar, s_nu_mubar, s_nubar_mubar;

  /// Every solution is one-dimensional.
  bool complete() const;
  /// Description of the first non-unique solution, empty when complete.
  std::string defect() const;
  ReflectionInputs inputs() const;
};

ReflectionSetup build_reflection_setup(const BoundaryPoint& point);

/// A check whose inputs could not all be solved uniquely has no report.
struct CheckOutcome {
  std::optional<VerificationReport> report;
  std::string defect;

  bool solvable() const { return report.has_value(); }
  bool passed() const { return report && report->passed; }
};

CheckOutcome run_ybe(int n, Complex q, const std::vector<double>& thetas, double tol,
                     double rel_tol = kDefaultRelTol);
CheckOutcome run_reflection_equation(const BoundaryPoint& point, double tol);
CheckOutcome run_b_commutation(const BoundaryPoint& point, double tol);
/// Requires point.theta_lambda.
CheckOutcome run_sklyanin(const BoundaryPoint& point, double tol);
CheckOutcome run_coideal(const BoundaryPoint& point, double tol);

}  // namespace qaffine
