#pragma once

// Nonlinear consistency checks on solved intertwiners. Every comparison is
// projective: one recovered scalar per identity.

#include <array>
#include <cstddef>

#include "qaffine/linalg.hpp"
#include "qaffine/report.hpp"
#include "qaffine/reps.hpp"

namespace qaffine {

/// Braiding S-matrices for legs a, b, c with dimensions dims = {d_a, d_b, d_c}.
/// Compares (1 x S_ab)(S_ac x 1)(1 x S_bc) with (S_bc x 1)(1 x S_ac)(S_ab x 1).
VerificationReport check_ybe(const ComplexMatrix& s_ab, const ComplexMatrix& s_ac, const ComplexMatrix& s_bc,
                             std::array<std::size_t, 3> dims, double tol);

/// Objects of one reflection-equation instance, all in one convention.
/// K_mu : V^mu -> V^mubar, K_nu : V^nu -> V^nubar, and braiding S-matrices
/// s_a_b : V^a (x) V^b -> V^b (x) V^a.
struct ReflectionInputs {
  ComplexMatrix k_mu;
  ComplexMatrix k_nu;
  ComplexMatrix s_mu_nu;
  ComplexMatrix s_mu_nubar;
  ComplexMatrix s_nu_mubar;
  ComplexMatrix s_nubar_mubar;
};

/// (1 x K_nu) S_{nu mubar} (1 x K_mu) S_{mu nu}
///   vs  S_{nubar mubar} (1 x K_mu) S_{mu nubar} (1 x K_nu)
VerificationReport check_reflection_equation(const ReflectionInputs& in, double tol);

/// Delta(Qhat_i) = (Q_i + Qbar_i) (x) 1 + q^{T_i} (x) Qhat_i in pi_A (x) pi_B.
/// Exact comparison (lambda fixed to 1).
VerificationReport check_coideal_property(const EvaluationRep& a, const EvaluationRep& b, const BoundaryParams& eps,
                                          double tol);

/// B = r_op_out (K_mu x 1) r_in : V^mu (x) V^lambda -> V^mubar (x) V^lambda.
ComplexMatrix eval_b_matrix(const ComplexMatrix& k_mu, const ComplexMatrix& r_in, const ComplexMatrix& r_op_out);

/// Blocks M_ab of B (indexed by the mu leg) must satisfy
/// K_nu M_ab = c Mbar_ab K_nu with one scalar c for all blocks.
VerificationReport check_b_commutation(const ComplexMatrix& b_with_nu, const ComplexMatrix& b_with_nubar,
                                       const ComplexMatrix& k_nu, double tol);

/// Plain R-matrices on legs (1,2): r_a_b acts on V^a (x) V^b; prp_a_b is the
/// flip conjugate of the plain R on V^a (x) V^b, acting on V^b (x) V^a.
struct SklyaninRSet {
  ComplexMatrix r_mu_nu;
  ComplexMatrix r_mu_nubar;
  ComplexMatrix prp_nubar_mubar;
  ComplexMatrix prp_nu_mubar;
};

/// Legs V^mu (x) V^nu (x) V^lambda. b1 acts on legs (1,3), b2 on legs (2,3):
///   [PRP^{nubar mubar}]_12 B1_13 [R^{mu nubar}]_12 B2_23
///     vs  B2_23 [PRP^{nu mubar}]_12 B1_13 [R^{mu nu}]_12
VerificationReport check_sklyanin(const ComplexMatrix& b1, const ComplexMatrix& b2, const SklyaninRSet& r,
                                  std::size_t companion_dim, double tol);

}  // namespace qaffine
