#include "qaffine/verify.hpp"

#include <string>

#include "qaffine/error.hpp"

namespace qaffine {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " must be a nonempty square matrix");
  }
}

void require_size(const ComplexMatrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + ": expected " + std::to_string(dim) + "x" +
                                                   std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                                                   std::to_string(m.cols()));
  }
}

VerificationReport compare(const char* name, const ComplexMatrix& lhs, const ComplexMatrix& rhs, double tol) {
  const ProjectiveComparison cmp = projective_compare(lhs, rhs, tol);
  return make_report(name, cmp.deviation, cmp.lambda, tol);
}

ComplexMatrix on_legs(const ComplexMatrix& op, std::initializer_list<std::size_t> legs,
                      std::initializer_list<std::size_t> dims) {
  return embed_on_legs(op, std::span(legs.begin(), legs.size()), std::span(dims.begin(), dims.size()));
}

}  // namespace

VerificationReport check_ybe(const ComplexMatrix& s_ab, const ComplexMatrix& s_ac, const ComplexMatrix& s_bc,
                             std::array<std::size_t, 3> dims, double tol) {
  const auto [da, db, dc] = dims;
  require_size(s_ab, static_cast<Eigen::Index>(da * db), "check_ybe: S_ab");
  require_size(s_ac, static_cast<Eigen::Index>(da * dc), "check_ybe: S_ac");
  require_size(s_bc, static_cast<Eigen::Index>(db * dc), "check_ybe: S_bc");

  // Leg order after each step is tracked in the dimension lists.
  const ComplexMatrix lhs = on_legs(s_ab, {1, 2}, {dc, da, db}) * on_legs(s_ac, {0, 1}, {da, dc, db}) *
                            on_legs(s_bc, {1, 2}, {da, db, dc});
  const ComplexMatrix rhs = on_legs(s_bc, {0, 1}, {db, dc, da}) * on_legs(s_ac, {1, 2}, {db, da, dc}) *
                            on_legs(s_ab, {0, 1}, {da, db, dc});
  return compare("ybe", lhs, rhs, tol);
}

VerificationReport check_reflection_equation(const ReflectionInputs& in, double tol) {
  require_square(in.k_mu, "K_mu");
  require_square(in.k_nu, "K_nu");
  const auto dim_mu = static_cast<std::size_t>(in.k_mu.rows());
  const auto dim_nu = static_cast<std::size_t>(in.k_nu.rows());
  const auto pair = static_cast<Eigen::Index>(dim_mu * dim_nu);
  require_size(in.s_mu_nu, pair, "S_{mu nu}");
  require_size(in.s_mu_nubar, pair, "S_{mu nubar}");
  require_size(in.s_nu_mubar, pair, "S_{nu mubar}");
  require_size(in.s_nubar_mubar, pair, "S_{nubar mubar}");

  // V^mu (x) V^nu -> V^mubar (x) V^nubar along both paths.
  const ComplexMatrix left = kron(identity(dim_mu), in.k_nu) * in.s_nu_mubar * kron(identity(dim_nu), in.k_mu) *
                             in.s_mu_nu;
  const ComplexMatrix right = in.s_nubar_mubar * kron(identity(dim_nu), in.k_mu) * in.s_mu_nubar *
                              kron(identity(dim_mu), in.k_nu);
  return compare("reflection-equation", left, right, tol);
}

VerificationReport check_coideal_property(const EvaluationRep& a, const EvaluationRep& b, const BoundaryParams& eps,
                                          double tol) {
  const CoidealGenerators qhat_b = coideal_generators(b, eps);
  coideal_generators(a, eps);  // validates eps length against a
  const ComplexMatrix id_b = identity(b.dim());

  double worst = 0.0;
  for (int i = 0; i <= a.n; ++i) {
    const ComplexMatrix lhs = coproduct_matrix(a, b, {GeneratorKind::kQ, i}) +
                              coproduct_matrix(a, b, {GeneratorKind::kQbar, i}) +
                              eps.eps[i] * coproduct_matrix(a, b, {GeneratorKind::kQT, i});
    const ComplexMatrix rhs = kron(a.charges[i] + a.bar_charges[i], id_b) + kron(a.qt[i], qhat_b.qhat[i]);
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
  }
  return make_report("coideal", worst, 1.0, tol);
}

ComplexMatrix eval_b_matrix(const ComplexMatrix& k_mu, const ComplexMatrix& r_in, const ComplexMatrix& r_op_out) {
  require_square(k_mu, "K_mu");
  require_square(r_in, "R_in");
  require_square(r_op_out, "R_op_out");
  if (r_in.rows() % k_mu.rows() != 0 || r_op_out.rows() != r_in.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "eval_b_matrix: R shapes do not factor through K");
  }
  const auto companion = static_cast<std::size_t>(r_in.rows() / k_mu.rows());
  return r_op_out * kron(k_mu, identity(companion)) * r_in;
}

VerificationReport check_b_commutation(const ComplexMatrix& b_with_nu, const ComplexMatrix& b_with_nubar,
                                       const ComplexMatrix& k_nu, double tol) {
  require_square(k_nu, "K_nu");
  const Eigen::Index block = k_nu.rows();
  if (b_with_nu.rows() != b_with_nubar.rows() || b_with_nu.cols() != b_with_nubar.cols() ||
      b_with_nu.rows() % block != 0 || b_with_nu.rows() != b_with_nu.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "check_b_commutation: block shapes do not match K_nu");
  }
  const Eigen::Index outer = b_with_nu.rows() / block;

  // Stack K M_ab and Mbar_ab K over all (a, b).
  ComplexMatrix lhs(outer * outer * block, block);
  ComplexMatrix rhs(outer * outer * block, block);
  for (Eigen::Index a = 0; a < outer; ++a) {
    for (Eigen::Index b = 0; b < outer; ++b) {
      const Eigen::Index slot = (a * outer + b) * block;
      lhs.middleRows(slot, block) = k_nu * b_with_nu.block(a * block, b * block, block, block);
      rhs.middleRows(slot, block) = b_with_nubar.block(a * block, b * block, block, block) * k_nu;
    }
  }
  return compare("b-commutation", lhs, rhs, tol);
}

VerificationReport check_sklyanin(const ComplexMatrix& b1, const ComplexMatrix& b2, const SklyaninRSet& r,
                                  std::size_t companion_dim, double tol) {
  const Eigen::Index pair = r.r_mu_nu.rows();
  require_square(r.r_mu_nu, "R^{mu nu}");
  require_size(r.r_mu_nubar, pair, "R^{mu nubar}");
  require_size(r.prp_nubar_mubar, pair, "PRP^{nubar mubar}");
  require_size(r.prp_nu_mubar, pair, "PRP^{nu mubar}");
  if (companion_dim == 0 || b1.rows() % static_cast<Eigen::Index>(companion_dim) != 0 ||
      b2.rows() % static_cast<Eigen::Index>(companion_dim) != 0) {
    throw Error(ErrorKind::kDimensionMismatch, "check_sklyanin: B matrices do not carry the companion leg");
  }
  const auto d1 = static_cast<std::size_t>(b1.rows()) / companion_dim;
  const auto d2 = static_cast<std::size_t>(b2.rows()) / companion_dim;
  if (static_cast<Eigen::Index>(d1 * d2) != pair) {
    throw Error(ErrorKind::kDimensionMismatch, "check_sklyanin: R-matrices do not match the B legs");
  }
  const std::size_t dl = companion_dim;
  const ComplexMatrix id_l = identity(dl);

  const ComplexMatrix b1_13 = on_legs(b1, {0, 2}, {d1, d2, dl});
  const ComplexMatrix b2_23 = on_legs(b2, {1, 2}, {d1, d2, dl});
  const ComplexMatrix lhs = kron(r.prp_nubar_mubar, id_l) * b1_13 * kron(r.r_mu_nubar, id_l) * b2_23;
  const ComplexMatrix rhs = b2_23 * kron(r.prp_nu_mubar, id_l) * b1_13 * kron(r.r_mu_nu, id_l);
  return compare("sklyanin", lhs, rhs, tol);
}

}  // namespace qaffine
