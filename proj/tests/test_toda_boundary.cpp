#include <doctest.h>

#include "qaffine/error.hpp"
#include "qaffine/toda_boundary.hpp"
#include "support.hpp"

using namespace qaffine;
using testing_support::generic_q;
using testing_support::generic_x;
using testing_support::max_abs_diff;

namespace {

const Complex kQ = std::polar(0.8, 0.3);

std::vector<BoundaryParams> sign_patterns(int n) {
  std::vector<BoundaryParams> out;
  for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
    BoundaryParams p;
    for (int i = 0; i <= n; ++i) p.eps.push_back((mask >> i) & 1 ? -1.0 : 1.0);
    out.push_back(p);
  }
  return out;
}

Complex det3(const Eigen::Matrix3cd& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// n = 1 by elimination: fix K00 = 1 and solve the two family-1 equations and
// K11 = K00 for (K01, K10, K11) by Cramer's rule.
ComplexMatrix cramer_k(Complex q, Complex x, Complex e0, Complex e1) {
  const Complex d = 1.0 / q - q;
  Eigen::Matrix3cd a;
  a << x, -1.0 / x, 0.0,  //
      -1.0 / x, x, e1 * d,  //
      0.0, 0.0, 1.0;
  const Eigen::Vector3cd rhs(-e0 * d, 0.0, 1.0);
  const Complex det = det3(a);
  Complex sol[3];
  for (int c = 0; c < 3; ++c) {
    Eigen::Matrix3cd m = a;
    m.col(c) = rhs;
    sol[c] = det3(m) / det;
  }
  ComplexMatrix k(2, 2);
  k << 1.0, sol[0], sol[1], sol[2];
  return k;
}

}  // namespace

TEST_CASE("explicit system layout") {
  const Complex q = 2.0, x = 3.0;
  const auto sys = explicit_boundary_system(1, q, x, BoundaryParams{{Complex(0.5, 1), -1.0}});
  REQUIRE(sys.rows.rows() == 4);
  REQUIRE(sys.rows.cols() == 4);
  const Complex e0(0.5, 1);
  CHECK(std::abs(sys.rows(0, 0) - e0 * (1.0 / q - q)) < 1e-15);
  CHECK(sys.rows(0, 1) == x);
  CHECK(std::abs(sys.rows(0, 2) + 1.0 / x) < 1e-15);
  CHECK(sys.rows(0, 3) == 0.0);
  // Both family-2 rows state K11 = K00.
  Eigen::RowVector4cd same(-1, 0, 0, 1);
  CHECK((sys.rows.row(2) - same).norm() == 0.0);
  CHECK(projective_compare(sys.rows.row(3), same, 1e-15).equal);

  CHECK(explicit_boundary_system(2, kQ, 1.5, BoundaryParams{{1.0, 1.0, 1.0}}).rows.rows() == 12);
  CHECK_THROWS_AS(explicit_boundary_system(2, kQ, 1.5, BoundaryParams{{1.0, 1.0}}), Error);
}

TEST_CASE("n = 1 anchors at q = 2, x = 3") {
  const auto plus = solve_explicit_k(1, 2.0, 3.0, BoundaryParams{{1.0, 1.0}});
  REQUIRE(plus.unique());
  const ComplexMatrix& k = *plus.normalized;
  CHECK(std::abs(k(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(k(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(k(0, 1) - 0.5625) < 1e-12);
  CHECK(std::abs(k(1, 0) - 0.5625) < 1e-12);

  const auto minus = solve_explicit_k(1, 2.0, 3.0, BoundaryParams{{1.0, -1.0}});
  REQUIRE(minus.unique());
  const ComplexMatrix& m = *minus.normalized;
  CHECK(std::abs(m(0, 1) / m(0, 0) - 0.45) < 1e-12);
  CHECK(std::abs(m(1, 0) + m(0, 1)) < 1e-12);
}

TEST_CASE("n = 1 solution matches the Cramer's rule oracle for arbitrary eps") {
  std::mt19937 rng(77);
  for (int sample = 0; sample < 20; ++sample) {
    const Complex q = generic_q(rng), x = generic_x(rng);
    const Complex e0 = 2.0 * generic_x(rng) - 1.0, e1 = generic_x(rng) + 0.5;
    const auto sol = solve_explicit_k(1, q, x, BoundaryParams{{e0, e1}});
    REQUIRE(sol.dimension() == 1);
    CHECK(projective_compare(*sol.normalized, cramer_k(q, x, e0, e1), 1e-10).equal);
  }
}

TEST_CASE("eps = 0 gives the identity") {
  std::mt19937 rng(4);
  for (int n = 1; n <= 4; ++n) {
    const auto sol = solve_explicit_k(n, generic_q(rng), generic_x(rng), BoundaryParams{std::vector<Complex>(n + 1, 0.0)});
    REQUIRE(sol.unique());
    CHECK(max_abs_diff(*sol.normalized, identity(static_cast<std::size_t>(n) + 1)) < 1e-10);
  }
}

TEST_CASE("sign patterns: unique solution equal to the closed form with the product aggregate") {
  std::mt19937 rng(8);
  for (int n = 2; n <= 4; ++n) {
    const Complex q = generic_q(rng), x = generic_x(rng);
    for (const auto& eps : sign_patterns(n)) {
      const auto sol = solve_explicit_k(n, q, x, eps);
      REQUIRE(sol.dimension() == 1);
      CHECK(sol.residual < 1e-12);
      const ComplexMatrix closed = closed_form_k(n, q, x, ClosedFormParams(eps));
      CHECK(projective_compare(*sol.normalized, closed, 1e-8).equal);
    }
  }
}

TEST_CASE("the opposite aggregate sign does not solve the system") {
  const auto eps = BoundaryParams{{1.0, -1.0, 1.0}};
  const auto sol = solve_explicit_k(2, kQ, std::exp(0.7), eps);
  REQUIRE(sol.unique());
  Complex product = 1.0;
  for (Complex e : eps.eps) product *= e;
  const auto wrong = closed_form_k(2, kQ, std::exp(0.7), ClosedFormParams(eps, -product));
  CHECK_FALSE(projective_compare(*sol.normalized, wrong, 1e-8).equal);
}

TEST_CASE("a boundary parameter of modulus two leaves no solution") {
  std::mt19937 rng(15);
  for (int n = 2; n <= 4; ++n) {
    for (int pos = 0; pos <= n; ++pos) {
      BoundaryParams eps{std::vector<Complex>(n + 1, 1.0)};
      eps.eps[pos] = 2.0;
      CHECK(solve_explicit_k(n, generic_q(rng), generic_x(rng), eps).dimension() == 0);
    }
  }
}

TEST_CASE("n = 1 has a unique solution for every eps") {
  std::mt19937 rng(16);
  for (int sample = 0; sample < 20; ++sample) {
    const BoundaryParams eps{{3.0 * generic_x(rng), Complex(-2, 1) * generic_x(rng)}};
    CHECK(solve_explicit_k(1, generic_q(rng), generic_x(rng), eps).dimension() == 1);
  }
}

TEST_CASE("closed form at n = 1") {
  const ComplexMatrix k = closed_form_k(1, 2.0, 3.0, ClosedFormParams(BoundaryParams{{1.0, 1.0}}));
  CHECK(std::abs(k(0, 0) - 16.0 / 9.0) < 1e-14);
  CHECK(std::abs(k(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(k(0, 1) / k(0, 0) - 0.5625) < 1e-14);

  const ComplexMatrix m = closed_form_k(1, 2.0, 3.0, ClosedFormParams(BoundaryParams{{1.0, -1.0}}, -1.0));
  CHECK(std::abs(m(0, 1) / m(0, 0) - 0.45) < 1e-14);
  CHECK(std::abs(m(1, 0) + m(0, 1)) < 1e-14);
}

TEST_CASE("closed form is projectively branch independent") {
  std::mt19937 rng(23);
  for (int n = 1; n <= 4; ++n) {
    const Complex q = generic_q(rng), x = generic_x(rng);
    const BoundaryParams eps{std::vector<Complex>(n + 1, -1.0)};
    const auto a = closed_form_k(n, q, x, ClosedFormParams(eps, std::nullopt, 1.0, SqrtBranch::kPrincipal));
    const auto b = closed_form_k(n, q, x, ClosedFormParams(eps, std::nullopt, 1.0, SqrtBranch::kNegated));
    CHECK(projective_compare(a, b, 1e-12).equal);
  }
}

TEST_CASE("closed form parameters require unit-modulus eps") {
  CHECK_THROWS_AS(ClosedFormParams(BoundaryParams{{1.0, 2.0}}), Error);
  CHECK_THROWS_AS(ClosedFormParams(BoundaryParams{{1.0, 0.0}}), Error);
  CHECK_NOTHROW(ClosedFormParams(BoundaryParams{{std::polar(1.0, 0.4), -1.0}}));
}

TEST_CASE("gauge reconciliation on constructed inputs") {
  const std::vector<double> thetas = {0.7, 0.23, -0.41};
  std::vector<ComplexMatrix> explicit_k, scaled;
  ComplexMatrix g = ComplexMatrix::Zero(3, 3);
  g.diagonal() << 1.0, Complex(0, 2), 0.5;
  for (double t : thetas) {
    const ComplexMatrix k = closed_form_k(2, kQ, std::exp(t), ClosedFormParams(BoundaryParams{{1.0, 1.0, 1.0}}));
    explicit_k.push_back(k);
    scaled.push_back(g * k * Complex(1.0 + t, t));
  }
  const auto self = reconcile_gauge(explicit_k, explicit_k, thetas);
  CHECK(self.available);
  CHECK(self.theta_independent);
  REQUIRE(self.gauge);
  CHECK(projective_compare(*self.gauge, identity(3), 1e-10).equal);

  const auto conj = reconcile_gauge(explicit_k, scaled, thetas);
  CHECK(conj.theta_independent);
  REQUIRE(conj.gauge);
  CHECK(projective_compare(*conj.gauge, g, 1e-10).equal);
}

TEST_CASE("gauge between the explicit system and the engine") {
  const std::vector<double> thetas = {0.7, 0.23, -0.41};
  const auto n1 = reconcile_conventions(1, kQ, BoundaryParams{{1.0, 1.0}}, thetas, Reflection::kCrossed);
  CHECK(n1.available);
  CHECK(n1.theta_independent);
  REQUIRE(n1.gauge);
  CHECK(projective_compare(*n1.gauge, identity(2), 1e-8).equal);

  const auto crossed = reconcile_conventions(2, kQ, BoundaryParams{{1.0, 1.0, 1.0}}, thetas, Reflection::kCrossed);
  CHECK_FALSE(crossed.available);
  CHECK_FALSE(crossed.note.empty());

  const auto twisted = reconcile_conventions(2, kQ, BoundaryParams{{1.0, 1.0, 1.0}}, thetas, Reflection::kTwisted);
  CHECK(twisted.available);
  MESSAGE("n=2 twisted gauge: theta independent = " << twisted.theta_independent
                                                    << ", max deviation = " << twisted.max_deviation);
}
