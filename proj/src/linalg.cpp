#include "qaffine/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qaffine/error.hpp"

namespace qaffine {

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix matrix_unit(std::size_t dim, std::size_t row, std::size_t col) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix permute_legs(std::span<const std::size_t> perm, std::span<const std::size_t> dims) {
  const std::size_t legs = dims.size();
  if (perm.size() != legs) {
    throw Error(ErrorKind::kDimensionMismatch, "permute_legs: permutation length differs from leg count");
  }
  std::vector<bool> seen(legs, false);
  for (std::size_t p : perm) {
    if (p >= legs || seen[p]) {
      throw Error(ErrorKind::kInvalidArgument, "permute_legs: not a permutation");
    }
    seen[p] = true;
  }
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw Error(ErrorKind::kInvalidArgument, "permute_legs: zero leg dimension");
  }

  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> out_dims(legs);
  for (std::size_t j = 0; j < legs; ++j) out_dims[j] = dims[perm[j]];

  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(total),
                                        static_cast<Eigen::Index>(total));
  std::vector<std::size_t> digits(legs, 0);
  for (std::size_t in = 0; in < total; ++in) {
    // digits holds the multi-index of `in`, leg 0 most significant.
    std::size_t out = 0;
    for (std::size_t j = 0; j < legs; ++j) out = out * out_dims[j] + digits[perm[j]];
    p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;

    for (std::size_t k = legs; k-- > 0;) {
      if (++digits[k] < dims[k]) break;
      digits[k] = 0;
    }
  }
  return p;
}

ComplexMatrix flip_operator(std::size_t dim_a, std::size_t dim_b) {
  const std::size_t perm[] = {1, 0};
  const std::size_t dims[] = {dim_a, dim_b};
  return permute_legs(perm, dims);
}

ComplexMatrix embed_on_legs(const ComplexMatrix& op, std::span<const std::size_t> legs,
                            std::span<const std::size_t> leg_dims) {
  if (legs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "embed_on_legs: no legs selected");
  }
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (legs[k] >= leg_dims.size() || (k > 0 && legs[k] <= legs[k - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "embed_on_legs: legs must be strictly increasing and in range");
    }
  }
  std::size_t op_dim = 1;
  for (std::size_t l : legs) op_dim *= leg_dims[l];
  if (op.rows() != static_cast<Eigen::Index>(op_dim) || op.cols() != op.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "embed_on_legs: operator is " + std::to_string(op.rows()) + "x" +
                    std::to_string(op.cols()) + ", selected legs span " + std::to_string(op_dim));
  }

  std::vector<std::size_t> perm(legs.begin(), legs.end());
  std::size_t rest_dim = 1;
  for (std::size_t k = 0; k < leg_dims.size(); ++k) {
    if (std::find(legs.begin(), legs.end(), k) == legs.end()) {
      perm.push_back(k);
      rest_dim *= leg_dims[k];
    }
  }
  const ComplexMatrix local = kron(op, identity(rest_dim));

  bool ordered = true;
  for (std::size_t k = 0; k < perm.size(); ++k) ordered = ordered && perm[k] == k;
  if (ordered) return local;

  // Contiguous block of legs: I (x) op (x) I without building a permutation.
  if (legs.back() - legs.front() + 1 == legs.size()) {
    std::size_t left = 1;
    for (std::size_t k = 0; k < legs.front(); ++k) left *= leg_dims[k];
    return kron(kron(identity(left), op), identity(rest_dim / left));
  }

  const ComplexMatrix p = permute_legs(perm, leg_dims);
  return p.transpose() * local * p;
}

Eigen::VectorXcd vec_row_major(const ComplexMatrix& m) {
  Eigen::VectorXcd v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

ComplexMatrix unvec_row_major(const Eigen::VectorXcd& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorKind::kShape, "unvec_row_major: length does not match shape");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

NullspaceResult nullspace(const ComplexMatrix& m, double rel_tol, std::optional<Shape> shape) {
  if (!(rel_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "nullspace: rel_tol must be positive");
  }
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "nullspace: empty system");
  }
  const Eigen::Index unknowns = m.cols();
  if (shape && shape->rows * shape->cols != unknowns) {
    throw Error(ErrorKind::kShape, "nullspace: requested shape does not match unknown count");
  }
  auto reshape = [&](const Eigen::VectorXcd& v) -> ComplexMatrix {
    return shape ? unvec_row_major(v, shape->rows, shape->cols) : ComplexMatrix(v);
  };

  NullspaceResult result;
  result.tolerance_used = rel_tol;

  if (m.cwiseAbs().maxCoeff() == 0.0) {
    result.degenerate = true;
    result.dimension = static_cast<std::size_t>(unknowns);
    for (Eigen::Index k = 0; k < unknowns; ++k) {
      result.basis.push_back(reshape(Eigen::VectorXcd::Unit(unknowns, k)));
    }
    return result;
  }

  Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  result.sigma_max = sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) >= rel_tol * result.sigma_max) ++rank;

  result.dimension = static_cast<std::size_t>(unknowns - rank);
  const ComplexMatrix& v = svd.matrixV();
  for (Eigen::Index k = rank; k < unknowns; ++k) {
    const Eigen::VectorXcd col = v.col(k);
    result.max_residual = std::max(result.max_residual, (m * col).norm() / result.sigma_max);
    result.basis.push_back(reshape(col));
  }
  return result;
}

ProjectiveComparison projective_compare(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "projective_compare: shapes differ");
  }
  const double norm_a = a.norm();
  const double norm_b = b.norm();
  if (norm_a == 0.0 && norm_b == 0.0) {
    throw Error(ErrorKind::kDegenerate, "degenerate comparison");
  }

  ProjectiveComparison out;
  if (norm_a == 0.0 || norm_b == 0.0) {
    out.deviation = 1.0;
    out.equal = out.deviation <= tol;
    return out;
  }
  out.lambda = b.conjugate().cwiseProduct(a).sum() / (norm_b * norm_b);
  out.deviation = (a - out.lambda * b).norm() / norm_a;
  out.equal = out.deviation <= tol;
  return out;
}

ComplexMatrix normalize_solution(const ComplexMatrix& v) {
  if (v.size() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "normalize_solution: empty input");
  }
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) max_mod = std::max(max_mod, std::abs(v(i, j)));
  }
  if (max_mod == 0.0) {
    throw Error(ErrorKind::kDegenerate, "normalize_solution: zero input");
  }
  const double threshold = max_mod * (1.0 - 1e-12);
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (std::abs(v(i, j)) >= threshold) {
        ComplexMatrix out = v / v(i, j);
        out(i, j) = Complex(1.0, 0.0);
        return out;
      }
    }
  }
  // Unreachable: the max-modulus entry always passes the threshold.
  throw Error(ErrorKind::kDegenerate, "normalize_solution: no pivot found");
}

}  // namespace qaffine
