#include "qaffine/toda_boundary.hpp"

#include <cmath>
#include <string>

#include "qaffine/error.hpp"

namespace qaffine {
namespace {

Complex ipow(Complex base, int exponent) {
  Complex out = 1.0;
  for (int k = 0; k < std::abs(exponent); ++k) out *= base;
  return exponent < 0 ? 1.0 / out : out;
}

}  // namespace

ExplicitBoundarySystem explicit_boundary_system(int n, Complex q, Complex x, const BoundaryParams& eps) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "explicit_boundary_system: n must be >= 1");
  if (q == 0.0 || x == 0.0) throw Error(ErrorKind::kInvalidArgument, "explicit_boundary_system: q and x must be nonzero");
  const int size = n + 1;
  if (eps.eps.size() != static_cast<std::size_t>(size)) {
    throw Error(ErrorKind::kDimensionMismatch, "explicit_boundary_system: expected n+1 boundary parameters");
  }

  auto entry = [size](int a, int b) { return static_cast<Eigen::Index>(((a % size) * size) + (b % size)); };
  const Eigen::Index unknowns = static_cast<Eigen::Index>(size) * size;
  const Eigen::Index row_count = static_cast<Eigen::Index>(size) * (2 * size - 2);

  ExplicitBoundarySystem sys{n, q, x, eps, ComplexMatrix::Zero(row_count, unknowns)};
  Eigen::Index r = 0;
  for (int i = 0; i < size; ++i, ++r) {
    sys.rows(r, entry(i, i)) += eps.eps[i] * (1.0 / q - q);
    sys.rows(r, entry(i, i + 1)) += x;
    sys.rows(r, entry(i + 1, i)) -= 1.0 / x;
  }
  for (int i = 0; i < size; ++i, ++r) {
    sys.rows(r, entry(i + 1, i + 1)) += 1.0;
    sys.rows(r, entry(i, i)) -= 1.0;
  }
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (j == i || j == (i + 1) % size) continue;
      sys.rows(r, entry(i, j)) += eps.eps[i] * q;
      sys.rows(r, entry(i + 1, j)) += 1.0 / x;
      ++r;
    }
  }
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (j == i || j == (i + 1) % size) continue;
      sys.rows(r, entry(j, i)) += eps.eps[i] / q;
      sys.rows(r, entry(j, i + 1)) += x;
      ++r;
    }
  }
  return sys;
}

IntertwinerSolution solve_explicit_k(int n, Complex q, Complex x, const BoundaryParams& eps, double rel_tol) {
  const ExplicitBoundarySystem sys = explicit_boundary_system(n, q, x, eps);
  const auto size = static_cast<Eigen::Index>(n + 1);

  IntertwinerSolution sol;
  sol.kind = ProblemKind::kExplicitBoundary;
  sol.n = n;
  sol.q = q;
  sol.spectral = {x};
  sol.eps = eps.eps;
  sol.nullspace = nullspace(sys.rows, rel_tol, Shape{size, size});
  if (sol.nullspace.dimension == 0) return sol;

  const ComplexMatrix& k = sol.nullspace.dimension == 1 ? sol.normalized.emplace(normalize_solution(
                                                              sol.nullspace.basis.front()))
                                                        : sol.nullspace.basis.front();
  sol.residual = (sys.rows * vec_row_major(k)).norm() / (sys.rows.norm() * k.norm());
  return sol;
}

ClosedFormParams::ClosedFormParams(BoundaryParams eps, std::optional<Complex> eps_aggregate, Complex k_theta,
                                   SqrtBranch branch)
    : eps_(std::move(eps)), k_theta_(k_theta), branch_(branch) {
  if (eps_.eps.empty()) throw Error(ErrorKind::kInvalidArgument, "closed form: no boundary parameters");
  Complex product = 1.0;
  for (Complex e : eps_.eps) {
    if (std::abs(std::abs(e) - 1.0) > 1e-12) {
      throw Error(ErrorKind::kInvalidArgument,
                  "closed form requires |eps_i| = 1, got |" + format_complex(e) + "| = " + format_double(std::abs(e)));
    }
    product *= e;
  }
  eps_aggregate_ = eps_aggregate.value_or(product);
}

ComplexMatrix closed_form_k(int n, Complex q, Complex x, const ClosedFormParams& params) {
  const int size = n + 1;
  if (n < 1 || params.eps().eps.size() != static_cast<std::size_t>(size)) {
    throw Error(ErrorKind::kDimensionMismatch, "closed_form_k: expected n+1 boundary parameters");
  }
  if (q == 0.0 || x == 0.0 || std::abs(q * q - 1.0) < 1e-14) {
    throw Error(ErrorKind::kInvalidArgument, "closed_form_k: need q, x nonzero and q^2 != 1");
  }
  Complex w = std::sqrt(-q * x);
  if (params.branch() == SqrtBranch::kNegated) w = -w;

  const std::vector<Complex>& eps = params.eps().eps;
  const Complex agg = params.eps_aggregate();
  const Complex k = params.k_theta();
  ComplexMatrix out(size, size);
  const Complex diag = (ipow(w, size) / q - agg * q * ipow(w, -size)) * k / (1.0 / q - q);
  for (int i = 0; i < size; ++i) {
    out(i, i) = diag;
    Complex chain = 1.0;
    for (int j = i + 1; j < size; ++j) {
      chain *= eps[j - 1];
      out(i, j) = chain * ipow(w, 2 * (i - j) + size) * k;
      out(j, i) = chain * agg * ipow(w, 2 * (j - i) - size) * k;
    }
  }
  return out;
}

GaugeReport reconcile_gauge(std::span<const ComplexMatrix> k_explicit, std::span<const ComplexMatrix> k_generic,
                            std::span<const double> thetas) {
  if (k_explicit.size() != k_generic.size() || k_explicit.size() != thetas.size() || k_explicit.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "reconcile_gauge: sample lists differ in length");
  }
  GaugeReport report;
  report.available = true;
  report.thetas.assign(thetas.begin(), thetas.end());
  for (std::size_t s = 0; s < k_explicit.size(); ++s) {
    Eigen::FullPivLU<ComplexMatrix> lu(k_explicit[s]);
    if (!lu.isInvertible() || !Eigen::FullPivLU<ComplexMatrix>(k_generic[s]).isInvertible()) {
      throw Error(ErrorKind::kDegenerate, "reconcile_gauge: singular K at sample " + std::to_string(s));
    }
    report.per_sample.push_back(normalize_solution(k_generic[s] * lu.inverse()));
  }
  for (const ComplexMatrix& c : report.per_sample) {
    report.max_deviation =
        std::max(report.max_deviation, projective_compare(c, report.per_sample.front(), 1e-6).deviation);
  }
  report.theta_independent = report.max_deviation < 1e-6;
  if (report.theta_independent) report.gauge = report.per_sample.front();
  report.note = report.theta_independent ? "rigid gauge" : "gauge depends on theta";
  return report;
}

GaugeReport reconcile_conventions(int n, Complex q, const BoundaryParams& eps, std::span<const double> thetas,
                                  Reflection convention, double rel_tol) {
  std::vector<ComplexMatrix> explicit_k;
  std::vector<ComplexMatrix> generic;
  for (double theta : thetas) {
    const Complex x = std::exp(Complex(theta, 0.0));
    const IntertwinerSolution kp = solve_explicit_k(n, q, x, eps, rel_tol);
    const EvaluationRep rep = vector_rep(n, q, x);
    const IntertwinerSolution kg = solve_boundary(rep, reflected_rep(rep, convention), eps, rel_tol);
    if (!kp.unique() || !kg.unique()) {
      GaugeReport report;
      report.thetas.assign(thetas.begin(), thetas.end());
      report.note = "no unique solution at theta=" + format_double(theta) + " (explicit system dimension " +
                    std::to_string(kp.dimension()) + ", engine dimension " + std::to_string(kg.dimension()) + ")";
      return report;
    }
    explicit_k.push_back(*kp.normalized);
    generic.push_back(*kg.normalized);
  }
  return reconcile_gauge(explicit_k, generic, thetas);
}

}  // namespace qaffine
