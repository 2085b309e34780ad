#include "qaffine/intertwiner.hpp"

#include <algorithm>
#include <future>
#include <string>
#include <thread>

#include "qaffine/error.hpp"
#include "qaffine/toda_boundary.hpp"

namespace qaffine {
namespace {

void require_compatible(const EvaluationRep& a, const EvaluationRep& b, const char* what) {
  if (a.n != b.n || std::abs(a.q - b.q) > 1e-14 * std::max(1.0, std::abs(a.q))) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": representations differ in n or q");
  }
}

void finish(IntertwinerSolution& sol, std::span<const ComplexMatrix> in, std::span<const ComplexMatrix> out) {
  if (sol.nullspace.dimension == 0) return;
  if (sol.nullspace.dimension == 1) {
    sol.normalized = normalize_solution(sol.nullspace.basis.front());
    sol.residual = intertwining_residual(*sol.normalized, in, out);
  } else {
    sol.residual = intertwining_residual(sol.nullspace.basis.front(), in, out);
  }
}

}  // namespace

const char* problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kBulk:
      return "bulk";
    case ProblemKind::kBoundary:
      return "boundary";
    case ProblemKind::kEquivalence:
      return "equivalence";
    case ProblemKind::kExplicitBoundary:
      return "explicit-boundary";
  }
  return "unknown";
}

ComplexMatrix sylvester_stack(std::span<const ComplexMatrix> in, std::span<const ComplexMatrix> out) {
  if (in.size() != out.size() || in.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "sylvester_stack: generator lists differ in length");
  }
  const Eigen::Index cols = in.front().rows();
  const Eigen::Index rows = out.front().rows();
  const Eigen::Index block = rows * cols;
  ComplexMatrix system(block * static_cast<Eigen::Index>(in.size()), block);
  const ComplexMatrix id_rows = ComplexMatrix::Identity(rows, rows);
  const ComplexMatrix id_cols = ComplexMatrix::Identity(cols, cols);
  for (std::size_t g = 0; g < in.size(); ++g) {
    if (in[g].rows() != cols || in[g].cols() != cols || out[g].rows() != rows || out[g].cols() != rows) {
      throw Error(ErrorKind::kDimensionMismatch, "sylvester_stack: inconsistent generator shapes");
    }
    system.middleRows(static_cast<Eigen::Index>(g) * block, block) =
        kron(id_rows, in[g].transpose()) - kron(out[g], id_cols);
  }
  return system;
}

double intertwining_residual(const ComplexMatrix& x, std::span<const ComplexMatrix> in,
                             std::span<const ComplexMatrix> out) {
  const double scale = x.norm();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t g = 0; g < in.size(); ++g) {
    const double denom = scale * (in[g].norm() + out[g].norm());
    if (denom == 0.0) continue;
    worst = std::max(worst, (x * in[g] - out[g] * x).norm() / denom);
  }
  return worst;
}

IntertwinerSolution solve_bulk(const EvaluationRep& a, const EvaluationRep& b, double rel_tol) {
  require_compatible(a, b, "solve_bulk");
  std::vector<ComplexMatrix> in;
  std::vector<ComplexMatrix> out;
  for (GeneratorId g : all_generators(a.n)) {
    in.push_back(coproduct_matrix(a, b, g));
    out.push_back(coproduct_matrix(b, a, g));
  }

  IntertwinerSolution sol;
  sol.kind = ProblemKind::kBulk;
  sol.n = a.n;
  sol.q = a.q;
  sol.spectral = {a.x, b.x};
  sol.flagged_degenerate = a.near_root_of_unity || (std::abs(a.x - b.x) <= 1e-12 * std::abs(a.x) &&
                                                    a.is_dual == b.is_dual && a.reflected == b.reflected);
  const auto shape = Shape{out.front().rows(), in.front().rows()};
  sol.nullspace = nullspace(sylvester_stack(in, out), rel_tol, shape);
  finish(sol, in, out);
  return sol;
}

IntertwinerSolution solve_boundary(const EvaluationRep& rep, const EvaluationRep& target, const BoundaryParams& eps,
                                   double rel_tol) {
  require_compatible(rep, target, "solve_boundary");
  const CoidealGenerators in = coideal_generators(rep, eps);
  const CoidealGenerators out = coideal_generators(target, eps);

  IntertwinerSolution sol;
  sol.kind = ProblemKind::kBoundary;
  sol.n = rep.n;
  sol.q = rep.q;
  sol.spectral = {rep.x, target.x};
  sol.eps = eps.eps;
  sol.flagged_degenerate = rep.near_root_of_unity;
  const auto shape = Shape{static_cast<Eigen::Index>(target.dim()), static_cast<Eigen::Index>(rep.dim())};
  sol.nullspace = nullspace(sylvester_stack(in.qhat, out.qhat), rel_tol, shape);
  finish(sol, in.qhat, out.qhat);
  return sol;
}

IntertwinerSolution solve_equivalence(const EvaluationRep& a, const EvaluationRep& b, double rel_tol) {
  require_compatible(a, b, "solve_equivalence");
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "solve_equivalence: dimensions differ");
  std::vector<ComplexMatrix> in;
  std::vector<ComplexMatrix> out;
  for (GeneratorId g : all_generators(a.n)) {
    in.push_back(a.image(g));
    out.push_back(b.image(g));
  }

  IntertwinerSolution sol;
  sol.kind = ProblemKind::kEquivalence;
  sol.n = a.n;
  sol.q = a.q;
  sol.spectral = {a.x, b.x};
  sol.flagged_degenerate = a.near_root_of_unity;
  const auto dim = static_cast<Eigen::Index>(a.dim());
  sol.nullspace = nullspace(sylvester_stack(in, out), rel_tol, Shape{dim, dim});
  finish(sol, in, out);
  return sol;
}

const char* scan_kind_name(ScanKind kind) {
  switch (kind) {
    case ScanKind::kBulk:
      return "bulk";
    case ScanKind::kBoundary:
      return "boundary";
    case ScanKind::kExplicitBoundary:
      return "explicit-boundary";
  }
  return "unknown";
}

namespace {

std::size_t scan_point(const ScanRequest& req, const std::vector<Complex>& point) {
  const std::size_t params = static_cast<std::size_t>(req.n) + 1;
  if (req.kind == ScanKind::kBulk) {
    if (req.axis != ScanAxis::kSpectral || point.size() != 1) {
      throw Error(ErrorKind::kInvalidArgument, "bulk scans take single spectral parameters");
    }
    return solve_bulk(vector_rep(req.n, req.q, req.x), vector_rep(req.n, req.q, point[0]), req.rel_tol).dimension();
  }

  Complex x = req.x;
  BoundaryParams eps = req.eps;
  if (req.axis == ScanAxis::kEps) {
    if (point.size() != params) {
      throw Error(ErrorKind::kInvalidArgument, "eps scan point must have n+1 components");
    }
    eps.eps = point;
  } else {
    if (point.size() != 1) throw Error(ErrorKind::kInvalidArgument, "spectral scan point must have one component");
    x = point[0];
  }

  if (req.kind == ScanKind::kExplicitBoundary) {
    return solve_explicit_k(req.n, req.q, x, eps, req.rel_tol).dimension();
  }
  const EvaluationRep rep = vector_rep(req.n, req.q, x);
  return solve_boundary(rep, reflected_rep(rep, req.reflection), eps, req.rel_tol).dimension();
}

}  // namespace

ScanResult dimension_scan(const ScanRequest& request, std::vector<std::vector<Complex>> grid) {
  if (grid.empty()) throw Error(ErrorKind::kInvalidArgument, "dimension_scan: empty grid");

  ScanResult result;
  result.request = request;
  result.grid = std::move(grid);
  result.dims.assign(result.grid.size(), 0);

  // Validate eagerly so errors surface before any worker starts.
  scan_point(request, result.grid.front());

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, result.grid.size());
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < result.grid.size(); k += workers) {
        result.dims[k] = scan_point(request, result.grid[k]);
      }
    }));
  }
  for (auto& t : tasks) t.get();
  return result;
}

std::vector<std::vector<Complex>> product_grid(std::span<const Complex> values, std::size_t count) {
  if (values.empty() || count == 0) throw Error(ErrorKind::kInvalidArgument, "product_grid: empty input");
  std::vector<std::vector<Complex>> out;
  std::vector<std::size_t> digits(count, 0);
  while (true) {
    std::vector<Complex> point;
    for (std::size_t d : digits) point.push_back(values[d]);
    out.push_back(std::move(point));
    std::size_t k = count;
    while (k > 0) {
      --k;
      if (++digits[k] < values.size()) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
  }
}

}  // namespace qaffine
