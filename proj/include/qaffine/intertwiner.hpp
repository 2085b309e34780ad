#pragma once

// Intertwining conditions posed as homogeneous linear systems and solved by
// SVD nullspace: bulk S-matrices, boundary K-matrices, equivalences.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qaffine/linalg.hpp"
#include "qaffine/reps.hpp"

namespace qaffine {

enum class ProblemKind { kBulk, kBoundary, kEquivalence, kExplicitBoundary };

const char* problem_kind_name(ProblemKind kind);

struct IntertwinerSolution {
  ProblemKind kind = ProblemKind::kBulk;
  int n = 1;
  Complex q{1.0, 0.0};
  /// Spectral parameters of the representations involved, in argument order.
  std::vector<Complex> spectral;
  std::vector<Complex> eps;
  NullspaceResult nullspace;
  /// Present iff the solution space is one-dimensional.
  std::optional<ComplexMatrix> normalized;
  /// Largest relative defining-equation residual of `normalized` (or of the
  /// first basis element when the dimension exceeds one).
  double residual = 0.0;
  /// Equal spectral parameters or q near a low-order root of unity.
  bool flagged_degenerate = false;

  std::size_t dimension() const { return nullspace.dimension; }
  bool unique() const { return normalized.has_value(); }
};

/// Rows of the map X -> X * in[g] - out[g] * X for each g in turn, acting on
/// the row-major vectorization of X (out-dim x in-dim).
ComplexMatrix sylvester_stack(std::span<const ComplexMatrix> in, std::span<const ComplexMatrix> out);

/// max_g |X in[g] - out[g] X|_F / (|X|_F (|in[g]|_F + |out[g]|_F))
double intertwining_residual(const ComplexMatrix& x, std::span<const ComplexMatrix> in,
                             std::span<const ComplexMatrix> out);

/// S : V_A (x) V_B -> V_B (x) V_A with S Delta_AB(g) = Delta_BA(g) S for every
/// Q_i, Qbar_i, q^{T_i}.
IntertwinerSolution solve_bulk(const EvaluationRep& a, const EvaluationRep& b, double rel_tol = kDefaultRelTol);

/// K : V -> target with K pi(Qhat_i) = target(Qhat_i) K, i = 0..n.
IntertwinerSolution solve_boundary(const EvaluationRep& rep, const EvaluationRep& target, const BoundaryParams& eps,
                                   double rel_tol = kDefaultRelTol);

/// M pi_A(g) = pi_B(g) M over all generators.
IntertwinerSolution solve_equivalence(const EvaluationRep& a, const EvaluationRep& b,
                                      double rel_tol = kDefaultRelTol);

enum class ScanKind { kBulk, kBoundary, kExplicitBoundary };
enum class ScanAxis {
  kEps,       ///< grid points are eps assignments at fixed x
  kSpectral,  ///< grid points are single spectral parameters {x}
};

const char* scan_kind_name(ScanKind kind);

struct ScanRequest {
  ScanKind kind = ScanKind::kBoundary;
  ScanAxis axis = ScanAxis::kEps;
  int n = 1;
  Complex q{1.0, 0.0};
  /// Fixed spectral parameter (x_A for bulk scans, x for eps scans).
  Complex x{1.0, 0.0};
  /// Fixed boundary parameters for spectral boundary scans.
  BoundaryParams eps;
  Reflection reflection = Reflection::kCrossed;
  double rel_tol = kDefaultRelTol;
};

struct ScanResult {
  ScanRequest request;
  std::vector<std::vector<Complex>> grid;
  std::vector<std::size_t> dims;
};

/// Nullspace dimension at every grid point. Points are evaluated in parallel;
/// results are in grid order.
ScanResult dimension_scan(const ScanRequest& request, std::vector<std::vector<Complex>> grid);

/// Cartesian product values^count, first component slowest.
std::vector<std::vector<Complex>> product_grid(std::span<const Complex> values, std::size_t count);

}  // namespace qaffine
