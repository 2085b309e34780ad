#include "qaffine/reps.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qaffine/error.hpp"

namespace qaffine {
namespace {

void require_rank(int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "rank n must be >= 1, got " + std::to_string(n));
}

bool same_q(Complex a, Complex b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)); }

void require_compatible(const EvaluationRep& a, const EvaluationRep& b, const char* what) {
  if (a.n != b.n || !same_q(a.q, b.q)) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": representations differ in n or q");
  }
}

bool low_order_root_of_unity(Complex q) {
  Complex power = 1.0;
  for (int k = 1; k <= 12; ++k) {
    power *= q;
    if (std::abs(power - 1.0) < 1e-10) return true;
  }
  return false;
}

double relative_gap(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return (lhs - rhs).norm() / std::max({1.0, lhs.norm(), rhs.norm()});
}

}  // namespace

int cartan_inner(int n, int i, int j) {
  require_rank(n);
  if (i < 0 || j < 0 || i > n || j > n) {
    throw Error(ErrorKind::kInvalidArgument, "cartan_inner: index out of range");
  }
  if (i == j) return 2;
  if (n == 1) return -2;
  const int size = n + 1;
  const int gap = ((j - i) % size + size) % size;
  return (gap == 1 || gap == size - 1) ? -1 : 0;
}

CartanData cartan_data(int n) {
  require_rank(n);
  CartanData data;
  data.n = n;
  data.inner.assign(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n + 1)));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) data.inner[i][j] = cartan_inner(n, i, j);
  }
  return data;
}

Complex q_from_hbar(double hbar) {
  if (hbar == 0.0 || !std::isfinite(hbar)) {
    throw Error(ErrorKind::kInvalidArgument, "q_from_hbar: hbar must be finite and nonzero");
  }
  const double phase = 2.0 * std::numbers::pi * (1.0 - hbar) / hbar;
  return std::polar(1.0, phase);
}

std::vector<GeneratorId> all_generators(int n) {
  std::vector<GeneratorId> out;
  for (GeneratorKind kind : {GeneratorKind::kQ, GeneratorKind::kQbar, GeneratorKind::kQT}) {
    for (int i = 0; i <= n; ++i) out.push_back({kind, i});
  }
  return out;
}

const ComplexMatrix& EvaluationRep::image(GeneratorId g) const {
  if (g.index < 0 || g.index > n) throw Error(ErrorKind::kInvalidArgument, "generator index out of range");
  switch (g.kind) {
    case GeneratorKind::kQ:
      return charges[g.index];
    case GeneratorKind::kQbar:
      return bar_charges[g.index];
    case GeneratorKind::kQT:
      return qt[g.index];
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown generator kind");
}

EvaluationRep vector_rep(int n, Complex q, Complex x) {
  require_rank(n);
  if (q == 0.0 || x == 0.0) throw Error(ErrorKind::kInvalidArgument, "vector_rep: q and x must be nonzero");
  if (!std::isfinite(std::abs(q)) || !std::isfinite(std::abs(x))) {
    throw Error(ErrorKind::kNonFinite, "vector_rep: q and x must be finite");
  }

  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  EvaluationRep rep;
  rep.n = n;
  rep.q = q;
  rep.x = x;
  rep.near_root_of_unity = low_order_root_of_unity(q);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t next = (i + 1) % dim;
    rep.charges.push_back(x * matrix_unit(dim, next, i));
    rep.bar_charges.push_back(matrix_unit(dim, i, next) / x);

    ComplexMatrix d = identity(dim);
    d(i, i) = 1.0 / q;
    d(next, next) = q;
    ComplexMatrix d_inv = identity(dim);
    d_inv(i, i) = q;
    d_inv(next, next) = 1.0 / q;
    rep.qt.push_back(std::move(d));
    rep.qt_inv.push_back(std::move(d_inv));
  }
  return rep;
}

EvaluationRep dual_rep(const EvaluationRep& rep, bool negate_rapidity) {
  const EvaluationRep base = negate_rapidity ? rebuild_at(rep, 1.0 / rep.x) : rep;
  EvaluationRep out = base;
  out.is_dual = !base.is_dual;
  out.dual_order = base.dual_order + 1;
  for (int i = 0; i <= base.n; ++i) {
    out.charges[i] = -(base.qt_inv[i] * base.charges[i]).transpose();
    out.bar_charges[i] = -(base.qt_inv[i] * base.bar_charges[i]).transpose();
    out.qt[i] = base.qt_inv[i].transpose();
    out.qt_inv[i] = base.qt[i].transpose();
  }
  return out;
}

EvaluationRep rebuild_at(const EvaluationRep& rep, Complex x) {
  if (rep.custom) {
    throw Error(ErrorKind::kInvalidArgument, "rebuild_at: representation built by conjugation cannot be rebuilt");
  }
  EvaluationRep out = vector_rep(rep.n, rep.q, x);
  for (int k = 0; k < rep.dual_order; ++k) out = dual_rep(out);
  if (rep.reflected) out = reflect_rep(out);
  return out;
}

EvaluationRep reflect_rep(const EvaluationRep& rep) {
  const int size = rep.n + 1;
  EvaluationRep out = rep;
  for (int i = 0; i < size; ++i) {
    const int src = (size - i) % size;
    out.charges[i] = rep.charges[src];
    out.bar_charges[i] = rep.bar_charges[src];
    out.qt[i] = rep.qt[src];
    out.qt_inv[i] = rep.qt_inv[src];
  }
  out.reflected = !rep.reflected;
  return out;
}

EvaluationRep conjugate_rep(const EvaluationRep& rep, const ComplexMatrix& g) {
  if (g.rows() != static_cast<Eigen::Index>(rep.dim()) || g.cols() != g.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "conjugate_rep: conjugator has wrong shape");
  }
  Eigen::FullPivLU<ComplexMatrix> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorKind::kDegenerate, "conjugate_rep: conjugator is singular");
  const ComplexMatrix g_inv = lu.inverse();

  EvaluationRep out = rep;
  out.custom = true;
  for (int i = 0; i <= rep.n; ++i) {
    out.charges[i] = g * rep.charges[i] * g_inv;
    out.bar_charges[i] = g * rep.bar_charges[i] * g_inv;
    out.qt[i] = g * rep.qt[i] * g_inv;
    out.qt_inv[i] = g * rep.qt_inv[i] * g_inv;
  }
  return out;
}

const char* reflection_name(Reflection r) {
  switch (r) {
    case Reflection::kCrossed:
      return "crossed";
    case Reflection::kTwisted:
      return "twisted";
    case Reflection::kInverse:
      return "inverse";
  }
  return "unknown";
}

EvaluationRep reflected_rep(const EvaluationRep& rep, Reflection convention) {
  switch (convention) {
    case Reflection::kInverse:
      return dual_rep(rep, true);
    case Reflection::kCrossed:
      return dual_rep(rebuild_at(rep, -rep.q / rep.x));
    case Reflection::kTwisted:
      return reflect_rep(dual_rep(rebuild_at(rep, -rep.q * rep.x)));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown reflection convention");
}

CoidealGenerators coideal_generators(const EvaluationRep& rep, const BoundaryParams& eps) {
  if (eps.eps.size() != static_cast<std::size_t>(rep.n) + 1) {
    throw Error(ErrorKind::kDimensionMismatch, "coideal_generators: expected " + std::to_string(rep.n + 1) +
                                                   " boundary parameters, got " + std::to_string(eps.eps.size()));
  }
  CoidealGenerators out;
  out.params = eps;
  for (int i = 0; i <= rep.n; ++i) {
    out.qhat.push_back(rep.charges[i] + rep.bar_charges[i] + eps.eps[i] * rep.qt[i]);
  }
  return out;
}

ComplexMatrix coproduct_matrix(const EvaluationRep& a, const EvaluationRep& b, GeneratorId g) {
  require_compatible(a, b, "coproduct_matrix");
  const ComplexMatrix& qt_a = a.image({GeneratorKind::kQT, g.index});
  if (g.kind == GeneratorKind::kQT) return kron(qt_a, b.image(g));
  return kron(a.image(g), identity(b.dim())) + kron(qt_a, b.image(g));
}

EvaluationRep tensor_rep(const EvaluationRep& a, const EvaluationRep& b) {
  require_compatible(a, b, "tensor_rep");
  EvaluationRep out;
  out.n = a.n;
  out.q = a.q;
  out.x = a.x;
  out.custom = true;
  out.near_root_of_unity = a.near_root_of_unity;
  for (int i = 0; i <= a.n; ++i) {
    out.charges.push_back(coproduct_matrix(a, b, {GeneratorKind::kQ, i}));
    out.bar_charges.push_back(coproduct_matrix(a, b, {GeneratorKind::kQbar, i}));
    out.qt.push_back(coproduct_matrix(a, b, {GeneratorKind::kQT, i}));
    out.qt_inv.push_back(kron(a.qt_inv[i], b.qt_inv[i]));
  }
  return out;
}

VerificationReport check_relations(const EvaluationRep& rep, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "check_relations: tol must be positive");
  const Complex q = rep.q;
  if (std::abs(q * q - 1.0) < 1e-14) {
    throw Error(ErrorKind::kInvalidArgument, "check_relations: q^2 = 1 makes the exchange relation singular");
  }

  const ComplexMatrix one = identity(rep.dim());
  double worst = 0.0;
  for (int i = 0; i <= rep.n; ++i) {
    worst = std::max(worst, relative_gap(rep.qt[i] * rep.qt_inv[i], one));
    for (int j = 0; j <= rep.n; ++j) {
      const int a = cartan_inner(rep.n, i, j);
      const Complex qa = std::pow(q, a);
      worst = std::max(worst, relative_gap(rep.qt[i] * rep.charges[j] * rep.qt_inv[i], qa * rep.charges[j]));
      worst = std::max(worst,
                       relative_gap(rep.qt[i] * rep.bar_charges[j] * rep.qt_inv[i], rep.bar_charges[j] / qa));

      const ComplexMatrix exchange =
          rep.charges[i] * rep.bar_charges[j] - rep.bar_charges[j] * rep.charges[i] / qa;
      const ComplexMatrix rhs =
          i == j ? ComplexMatrix((rep.qt[i] * rep.qt[i] - one) / (q * q - 1.0))
                 : ComplexMatrix(ComplexMatrix::Zero(exchange.rows(), exchange.cols()));
      worst = std::max(worst, relative_gap(exchange, rhs));
    }
  }

  VerificationReport report = make_report("relations", worst, 1.0, tol);
  report.context = {{"n", std::to_string(rep.n)},
                    {"q", format_complex(q)},
                    {"x", format_complex(rep.x)},
                    {"dual", rep.is_dual ? "true" : "false"}};
  return report;
}

}  // namespace qaffine
