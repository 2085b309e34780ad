#pragma once

// The explicit a_n^(1) vector-soliton reflection system, its closed-form
// solution, and the bridge to the engine's conjugate-module convention.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaffine/intertwiner.hpp"
#include "qaffine/linalg.hpp"
#include "qaffine/reps.hpp"

namespace qaffine {

/// Linear equations on the row-major entries K^a_b (a = row).
///
/// For each i = 0..n (indices mod N = n+1), in this order:
///   family 1: eps_i (q^-1 - q) K^i_i + x K^i_{i+1} - x^-1 K^{i+1}_i = 0
///   family 2: K^{i+1}_{i+1} - K^i_i = 0
///   family 3: eps_i q K^i_j + x^-1 K^{i+1}_j = 0,    j != i, i+1
///   family 4: eps_i q^-1 K^j_i + x K^j_{i+1} = 0,    j != i, i+1
/// Families are emitted as blocks (all of family 1, then family 2, ...).
struct ExplicitBoundarySystem {
  int n = 1;
  Complex q{1.0, 0.0};
  Complex x{1.0, 0.0};
  BoundaryParams eps;
  ComplexMatrix rows;
};

ExplicitBoundarySystem explicit_boundary_system(int n, Complex q, Complex x, const BoundaryParams& eps);

IntertwinerSolution solve_explicit_k(int n, Complex q, Complex x, const BoundaryParams& eps,
                                  double rel_tol = kDefaultRelTol);

enum class SqrtBranch { kPrincipal, kNegated };

class ClosedFormParams {
 public:
  /// Throws unless every |eps_i| = 1 (to 1e-12). The aggregate defaults to
  /// the product of the eps_i.
  explicit ClosedFormParams(BoundaryParams eps, std::optional<Complex> eps_aggregate = std::nullopt,
                            Complex k_theta = 1.0, SqrtBranch branch = SqrtBranch::kPrincipal);

  const BoundaryParams& eps() const { return eps_; }
  Complex eps_aggregate() const { return eps_aggregate_; }
  Complex k_theta() const { return k_theta_; }
  SqrtBranch branch() const { return branch_; }

 private:
  BoundaryParams eps_;
  Complex eps_aggregate_;
  Complex k_theta_;
  SqrtBranch branch_;
};

/// With w = sqrt(-q x) on the chosen branch and N = n+1:
///   K^i_i = (q^-1 w^N - agg q w^-N) k / (q^-1 - q)
///   K^i_j = eps_i...eps_{j-1} w^{2(i-j)+N} k          (j > i)
///   K^j_i = eps_i...eps_{j-1} agg w^{2(j-i)-N} k      (j > i)
ComplexMatrix closed_form_k(int n, Complex q, Complex x, const ClosedFormParams& params);

struct GaugeReport {
  /// False when some sample lacks a unique solution on either side.
  bool available = false;
  bool theta_independent = false;
  double max_deviation = 0.0;
  std::optional<ComplexMatrix> gauge;
  std::vector<ComplexMatrix> per_sample;
  std::vector<double> thetas;
  std::string note;
};

/// C(theta) = normalize(k_generic(theta) k_explicit(theta)^-1) per sample;
/// theta-independent when every C is projectively equal to the first within 1e-6.
GaugeReport reconcile_gauge(std::span<const ComplexMatrix> k_explicit, std::span<const ComplexMatrix> k_generic,
                            std::span<const double> thetas);

/// Solves both systems at x = e^theta for each sample and reconciles them.
GaugeReport reconcile_conventions(int n, Complex q, const BoundaryParams& eps, std::span<const double> thetas,
                                  Reflection convention, double rel_tol = kDefaultRelTol);

}  // namespace qaffine
