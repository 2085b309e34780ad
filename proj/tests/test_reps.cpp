#include <doctest.h>

#include <numbers>

#include "qaffine/error.hpp"
#include "qaffine/reps.hpp"
#include "support.hpp"

using namespace qaffine;
using testing_support::generic_q;
using testing_support::generic_x;
using testing_support::max_abs_diff;

namespace {

const GeneratorId q0{GeneratorKind::kQ, 0};
const Complex kQ = std::polar(0.8, 0.3);

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("cartan inner products") {
  CHECK(cartan_inner(2, 0, 2) == -1);
  CHECK(cartan_inner(1, 0, 1) == -2);
  CHECK(cartan_inner(3, 0, 2) == 0);
  CHECK(cartan_inner(3, 1, 1) == 2);
  CHECK_THROWS_AS(cartan_inner(2, 0, 3), Error);
  for (int n = 1; n <= 6; ++n) {
    const auto data = cartan_data(n);
    for (const auto& row : data.inner) {
      int sum = 0;
      for (int v : row) sum += v;
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("q from hbar") {
  CHECK(std::abs(q_from_hbar(1.0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(q_from_hbar(2.0) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(q_from_hbar(0.8) - Complex(0, 1)) < 1e-15);
  CHECK_THROWS_AS(q_from_hbar(0.0), Error);
}

TEST_CASE("vector representation entries") {
  const auto rep = vector_rep(1, 2.0, 3.0);
  CHECK(max_abs_diff(rep.qt[0], mat2(0.5, 0, 0, 2)) < 1e-15);
  CHECK(max_abs_diff(rep.qt[1], mat2(2, 0, 0, 0.5)) < 1e-15);
  const auto gens = coideal_generators(rep, BoundaryParams{{1.0, 1.0}});
  CHECK(max_abs_diff(gens.qhat[0], mat2(0.5, 1.0 / 3.0, 3, 2)) < 1e-15);

  const auto rep2 = vector_rep(2, kQ, Complex(1.3, 0.4));
  for (int i = 0; i <= 2; ++i) {
    const ComplexMatrix& q = rep2.charges[static_cast<std::size_t>(i)];
    int nonzero = 0;
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 3; ++c)
        if (q(r, c) != Complex(0, 0)) ++nonzero;
    CHECK(nonzero == 1);
    CHECK(q((i + 1) % 3, i) == Complex(1.3, 0.4));
  }
}

TEST_CASE("antipode dual") {
  const auto rep = vector_rep(1, 2.0, 3.0);
  const auto dual = dual_rep(rep);
  CHECK(dual.is_dual);
  CHECK(max_abs_diff(dual.image(q0), mat2(0, -1.5, 0, 0)) < 1e-15);

  const auto twice = dual_rep(dual);
  CHECK_FALSE(twice.is_dual);
  for (std::size_t i = 0; i < 2; ++i) CHECK(max_abs_diff(twice.qt[i], rep.qt[i]) < 1e-15);

  const auto at_inverse = dual_rep(rep, true);
  CHECK(std::abs(at_inverse.x - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("antipode axiom: pi(S(Q)) + pi(q^-T) pi(Q) = 0") {
  std::mt19937 rng(17);
  for (int n = 1; n <= 3; ++n) {
    const auto rep = vector_rep(n, generic_q(rng), generic_x(rng));
    const auto dual = dual_rep(rep);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
      // pibar(g)^T = pi(S(g)); pibar(q^T)^T = pi(q^-T)
      const ComplexMatrix s_q = dual.charges[i].transpose();
      const ComplexMatrix s_qbar = dual.bar_charges[i].transpose();
      const ComplexMatrix qt_inv = dual.qt[i].transpose();
      CHECK((s_q + qt_inv * rep.charges[i]).norm() < 1e-14);
      CHECK((s_qbar + qt_inv * rep.bar_charges[i]).norm() < 1e-14);
      CHECK(max_abs_diff(qt_inv * rep.qt[i], identity(rep.dim())) < 1e-14);
    }
  }
}

TEST_CASE("relations hold on vector and dual representations") {
  std::mt19937 rng(2024);
  for (int n = 1; n <= 4; ++n) {
    for (int sample = 0; sample < 10; ++sample) {
      const auto rep = vector_rep(n, generic_q(rng), generic_x(rng));
      const auto r1 = check_relations(rep, 1e-10);
      const auto r2 = check_relations(dual_rep(rep), 1e-10);
      CHECK(r1.passed);
      CHECK(r2.passed);
      CHECK(r1.deviation < 1e-10);
      CHECK(r2.deviation < 1e-10);
    }
  }
  CHECK(check_relations(vector_rep(1, 2.0, 3.0), 1e-12).passed);
  CHECK(check_relations(dual_rep(vector_rep(2, kQ, std::exp(0.7))), 1e-10).passed);
}

TEST_CASE("relations hold on twisted, reflected and conjugated modules") {
  std::mt19937 rng(5);
  const auto rep = vector_rep(2, kQ, generic_x(rng));
  for (Reflection r : {Reflection::kCrossed, Reflection::kTwisted, Reflection::kInverse})
    CHECK(check_relations(reflected_rep(rep, r), 1e-10).passed);
  CHECK(check_relations(reflect_rep(rep), 1e-10).passed);
  ComplexMatrix g = ComplexMatrix::Zero(3, 3);
  g.diagonal() << 1.0, Complex(2, 1), -0.5;
  const auto conj = conjugate_rep(rep, g);
  CHECK(conj.custom);
  CHECK(check_relations(conj, 1e-10).passed);
  CHECK_THROWS_AS(rebuild_at(conj, 2.0), Error);
}

TEST_CASE("a broken relation is detected") {
  auto rep = vector_rep(1, 2.0, 3.0);
  rep.charges[0](0, 0) += 0.01;
  CHECK_FALSE(check_relations(rep, 1e-10).passed);
  CHECK_THROWS_AS(check_relations(vector_rep(1, 2.0, 3.0), 0.0), Error);
}

TEST_CASE("coideal generators") {
  std::mt19937 rng(3);
  const auto rep = vector_rep(2, generic_q(rng), generic_x(rng));
  const auto zero = coideal_generators(rep, BoundaryParams{{0.0, 0.0, 0.0}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(max_abs_diff(zero.qhat[i], rep.charges[i] + rep.bar_charges[i]) == 0.0);
    CHECK(zero.qhat[i].rows() == 3);
  }
  const BoundaryParams e1{{Complex(0.3, 1), -2.0, Complex(0, 0.5)}};
  const BoundaryParams e2{{1.0, Complex(0.7, -0.2), 4.0}};
  BoundaryParams sum;
  for (std::size_t i = 0; i < 3; ++i) sum.eps.push_back(e1.eps[i] + e2.eps[i]);
  const auto a = coideal_generators(rep, e1), b = coideal_generators(rep, e2), c = coideal_generators(rep, sum);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(max_abs_diff(c.qhat[i], a.qhat[i] + b.qhat[i] - zero.qhat[i]) < 1e-14);
  CHECK_THROWS_AS(coideal_generators(rep, BoundaryParams{{1.0, 1.0}}), Error);
}

TEST_CASE("coproduct images") {
  const auto rep = vector_rep(1, 2.0, 3.0);
  const ComplexMatrix d = coproduct_matrix(rep, rep, {GeneratorKind::kQT, 0});
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 0.25, 1, 1, 4;
  CHECK(max_abs_diff(d, expected) < 1e-15);

  const ComplexMatrix dq = coproduct_matrix(rep, rep, q0);
  const ComplexMatrix structure = kron(rep.charges[0], identity(2)) + kron(rep.qt[0], rep.charges[0]);
  CHECK(max_abs_diff(dq, structure) < 1e-15);
  int nonzero = 0;
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 4; ++c) {
      if (dq(r, c) != Complex(0, 0)) {
        ++nonzero;
        CHECK(structure(r, c) != Complex(0, 0));
      }
    }
  CHECK(nonzero == 4);

  std::mt19937 rng(6);
  const auto a = vector_rep(2, kQ, generic_x(rng)), b = vector_rep(2, kQ, generic_x(rng));
  for (int i = 0; i <= 2; ++i) {
    const ComplexMatrix delta = coproduct_matrix(a, b, {GeneratorKind::kQT, i});
    const ComplexMatrix inv = kron(a.qt_inv[static_cast<std::size_t>(i)], b.qt_inv[static_cast<std::size_t>(i)]);
    CHECK(max_abs_diff(delta * inv, identity(9)) < 1e-14);
  }
  CHECK_THROWS_AS(coproduct_matrix(a, vector_rep(1, kQ, 1.0), q0), Error);
}

TEST_CASE("tensor product module satisfies the relations") {
  const auto a = vector_rep(1, kQ, std::exp(0.7));
  const auto b = vector_rep(1, kQ, std::exp(0.23));
  CHECK(check_relations(tensor_rep(a, b), 1e-10).passed);
  const auto c = vector_rep(2, kQ, std::exp(-0.41));
  CHECK(check_relations(tensor_rep(c, dual_rep(c)), 1e-10).passed);
}
