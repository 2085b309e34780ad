#pragma once

// Evaluation representations of U_q(a_n^(1)): the vector representation, its
// antipode dual, the coideal generators Qhat_i and coproduct images.

#include <cstddef>
#include <vector>

#include "qaffine/linalg.hpp"
#include "qaffine/report.hpp"

namespace qaffine {

struct CartanData {
  int n = 1;
  /// inner[i][j] = alpha_i . alpha_j, i, j = 0..n
  std::vector<std::vector<int>> inner;
};

int cartan_inner(int n, int i, int j);
CartanData cartan_data(int n);

/// q = exp(2 pi i (1 - hbar) / hbar)
Complex q_from_hbar(double hbar);

enum class GeneratorKind { kQ, kQbar, kQT };

struct GeneratorId {
  GeneratorKind kind;
  int index;
};

/// Generator order used when stacking intertwining systems:
/// Q_0..Q_n, Qbar_0..Qbar_n, q^{T_0}..q^{T_n}.
std::vector<GeneratorId> all_generators(int n);

struct EvaluationRep {
  int n = 1;
  Complex q{1.0, 0.0};
  /// Spectral parameter of the underlying vector representation.
  Complex x{1.0, 0.0};
  bool is_dual = false;
  /// Number of antipode duals applied on top of the vector representation.
  int dual_order = 0;
  /// Composed with the diagram reflection i -> -i (mod n+1).
  bool reflected = false;
  /// Built by conjugation; cannot be rebuilt at another spectral parameter.
  bool custom = false;
  /// q is within 1e-10 of a root of unity of order <= 12.
  bool near_root_of_unity = false;

  std::vector<ComplexMatrix> charges;      // Q_i
  std::vector<ComplexMatrix> bar_charges;  // Qbar_i
  std::vector<ComplexMatrix> qt;           // q^{T_i}
  std::vector<ComplexMatrix> qt_inv;       // q^{-T_i}

  std::size_t dim() const { return static_cast<std::size_t>(qt.front().rows()); }
  const ComplexMatrix& image(GeneratorId g) const;
};

EvaluationRep vector_rep(int n, Complex q, Complex x);

/// pibar(g) = pi(S(g))^T with S(Q_i) = -q^{-T_i} Q_i, S(Qbar_i) = -q^{-T_i} Qbar_i,
/// S(q^{T_i}) = q^{-T_i}. With negate_rapidity the input is first rebuilt at 1/x.
EvaluationRep dual_rep(const EvaluationRep& rep, bool negate_rapidity = false);

/// Same construction and twist history as `rep`, at spectral parameter x.
EvaluationRep rebuild_at(const EvaluationRep& rep, Complex x);

/// Relabels generators by the diagram reflection i -> -i (mod n+1).
EvaluationRep reflect_rep(const EvaluationRep& rep);

/// g -> G pi(g) G^{-1}
EvaluationRep conjugate_rep(const EvaluationRep& rep, const ComplexMatrix& g);

/// Which module plays V^{mubar}_{-theta} as the target of a reflection matrix.
enum class Reflection {
  kCrossed,  ///< antipode dual at x' = -q / x
  kTwisted,  ///< antipode dual at x' = -q x, composed with the diagram reflection
  kInverse,  ///< antipode dual at x' = 1 / x
};

const char* reflection_name(Reflection r);

/// Target module for K^mu(theta) : V^mu_theta -> V^mubar_{-theta}.
EvaluationRep reflected_rep(const EvaluationRep& rep, Reflection convention);

struct BoundaryParams {
  std::vector<Complex> eps;
};

struct CoidealGenerators {
  std::vector<ComplexMatrix> qhat;
  BoundaryParams params;
};

/// Qhat_i = Q_i + Qbar_i + eps_i q^{T_i}
CoidealGenerators coideal_generators(const EvaluationRep& rep, const BoundaryParams& eps);

/// (pi_A (x) pi_B)(Delta(g)) with Delta(Q) = Q (x) 1 + q^T (x) Q and
/// Delta(q^T) = q^T (x) q^T.
ComplexMatrix coproduct_matrix(const EvaluationRep& a, const EvaluationRep& b, GeneratorId g);

/// Tensor-product representation a (x) b built from coproduct images.
EvaluationRep tensor_rep(const EvaluationRep& a, const EvaluationRep& b);

/// Checks the defining relations (exponentiated Cartan action and the
/// Q Qbar exchange relation). Serre relations are not checked.
VerificationReport check_relations(const EvaluationRep& rep, double tol);

}  // namespace qaffine
