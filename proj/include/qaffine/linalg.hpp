#pragma once

// Dense complex linear algebra used by every other module: tensor products,
// tensor-leg placement, SVD nullspaces and comparison up to a scalar.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qaffine {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultRelTol = 1e-9;

ComplexMatrix identity(std::size_t dim);

/// Matrix unit e^row_col (a single 1 at (row, col)).
ComplexMatrix matrix_unit(std::size_t dim, std::size_t row, std::size_t col);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Permutation of tensor legs. Output leg j carries input leg perm[j];
/// dims[k] is the dimension of input leg k.
ComplexMatrix permute_legs(std::span<const std::size_t> perm, std::span<const std::size_t> dims);

/// P(u (x) v) = v (x) u for u in C^dim_a, v in C^dim_b.
ComplexMatrix flip_operator(std::size_t dim_a, std::size_t dim_b);

/// Places `op` on the (0-based, strictly increasing) `legs` of a tensor
/// product with the given leg dimensions, identity on the remaining legs.
ComplexMatrix embed_on_legs(const ComplexMatrix& op, std::span<const std::size_t> legs,
                            std::span<const std::size_t> leg_dims);

/// Row-major flattening into a column vector and its inverse.
Eigen::VectorXcd vec_row_major(const ComplexMatrix& m);
ComplexMatrix unvec_row_major(const Eigen::VectorXcd& v, Eigen::Index rows, Eigen::Index cols);

struct NullspaceResult {
  std::size_t dimension = 0;
  /// Orthonormal basis, each reshaped to the requested shape (column vectors
  /// when no shape is given).
  std::vector<ComplexMatrix> basis;
  double max_residual = 0.0;
  double tolerance_used = 0.0;
  double sigma_max = 0.0;
  /// Set when the input matrix is identically zero.
  bool degenerate = false;
};

struct Shape {
  Eigen::Index rows;
  Eigen::Index cols;
};

/// Right nullspace of m. A singular value counts as zero iff it is below
/// rel_tol * sigma_max.
NullspaceResult nullspace(const ComplexMatrix& m, double rel_tol = kDefaultRelTol,
                          std::optional<Shape> shape = std::nullopt);

struct ProjectiveComparison {
  bool equal = false;
  Complex lambda{0.0, 0.0};
  double deviation = 0.0;
};

/// Tests a == lambda * b with lambda = <vec b, vec a> / |b|^2 and
/// deviation = |a - lambda b|_F / |a|_F. If exactly one side is zero the
/// deviation is reported as 1 (not equal). Both zero throws kDegenerate.
ProjectiveComparison projective_compare(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Divides by the entry of largest modulus (ties within a relative 1e-12 go to
/// the lowest row-major index); that entry becomes exactly 1.
ComplexMatrix normalize_solution(const ComplexMatrix& v);

}  // namespace qaffine
