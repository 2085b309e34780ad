#include <doctest.h>

#include "qaffine/error.hpp"
#include "qaffine/pipeline.hpp"
#include "qaffine/verify.hpp"
#include "support.hpp"

using namespace qaffine;
using testing_support::generic_q;
using testing_support::generic_x;
using testing_support::random_matrix;

namespace {

const Complex kQ = std::polar(0.8, 0.3);
const std::vector<double> kRapidities = {0.7, 0.23, -0.41};

BoundaryPoint point(int n, std::vector<Complex> eps, Reflection r, bool companion = true) {
  BoundaryPoint p;
  p.n = n;
  p.q = kQ;
  p.theta_mu = kRapidities[0];
  p.theta_nu = kRapidities[1];
  if (companion) p.theta_lambda = kRapidities[2];
  p.eps.eps = std::move(eps);
  p.reflection = r;
  return p;
}

struct BPair {
  ComplexMatrix with_nu, with_nubar;
};

BPair b_matrices(const ReflectionInputs& in, std::size_t dim) {
  const ComplexMatrix flip = flip_operator(dim, dim);
  return {eval_b_matrix(in.k_mu, flip * in.s_mu_nu, in.s_nu_mubar * flip),
          eval_b_matrix(in.k_mu, flip * in.s_mu_nubar, in.s_nubar_mubar * flip)};
}

ReflectionInputs inputs_at(const BoundaryPoint& p) {
  const auto setup = build_reflection_setup(p);
  REQUIRE(setup.complete());
  return setup.inputs();
}

}  // namespace

TEST_CASE("Yang-Baxter at the reference rapidities") {
  for (int n : {1, 2}) {
    const auto out = run_ybe(n, kQ, kRapidities, 1e-8);
    REQUIRE(out.solvable());
    CHECK(out.passed());
    CHECK(out.report->deviation < 1e-8);
  }
}

TEST_CASE("Yang-Baxter fails for a random S_ab") {
  const auto a = vector_rep(1, kQ, std::exp(0.7)), b = vector_rep(1, kQ, std::exp(0.23)),
             c = vector_rep(1, kQ, std::exp(-0.41));
  std::mt19937 rng(1);
  const auto s_ac = solve_bulk(a, c), s_bc = solve_bulk(b, c);
  const auto r = check_ybe(random_matrix(rng, 4, 4), *s_ac.normalized, *s_bc.normalized, {2, 2, 2}, 1e-8);
  CHECK_FALSE(r.passed);
  CHECK_THROWS_AS(check_ybe(identity(4), identity(4), identity(6), {2, 2, 2}, 1e-8), Error);
}

TEST_CASE("Yang-Baxter holds wherever all three channels are unique") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> theta(-1.0, 1.0);
  for (int sample = 0; sample < 12; ++sample) {
    const int n = 1 + sample % 3;
    const auto out = run_ybe(n, generic_q(rng), {theta(rng), theta(rng), theta(rng)}, 1e-8);
    if (out.solvable()) CHECK(out.passed());
  }
}

TEST_CASE("reflection equation at the documented points") {
  const auto n1 = run_reflection_equation(point(1, {0.0, 0.0}, Reflection::kCrossed), 1e-8);
  REQUIRE(n1.solvable());
  CHECK(n1.passed());
  const auto n2 = run_reflection_equation(point(2, {0.0, 0.0, 0.0}, Reflection::kCrossed), 1e-8);
  REQUIRE(n2.solvable());
  CHECK(n2.passed());
  const auto missing = run_reflection_equation(point(2, {1.0, 1.0, 1.0}, Reflection::kCrossed), 1e-8);
  CHECK_FALSE(missing.solvable());
  CHECK(missing.defect.find("K_mu") != std::string::npos);
}

TEST_CASE("reflection equation detects a corrupted K") {
  auto in = inputs_at(point(1, {1.0, -1.0}, Reflection::kCrossed));
  CHECK(check_reflection_equation(in, 1e-8).passed);
  in.k_mu(0, 1) *= 1.01;
  CHECK_FALSE(check_reflection_equation(in, 1e-8).passed);
}

TEST_CASE("reflection equation holds at every point with unique inputs") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> theta(-1.0, 1.0);
  int asserted = 0;
  for (int sample = 0; sample < 16; ++sample) {
    BoundaryPoint p;
    p.n = 1 + sample % 2;
    p.q = generic_q(rng);
    p.theta_mu = theta(rng);
    p.theta_nu = theta(rng);
    // At n = 2 the crossed convention admits K only at eps = 0.
    for (int i = 0; i <= p.n; ++i) p.eps.eps.push_back(p.n == 1 ? generic_x(rng) : 0.0);
    const auto out = run_reflection_equation(p, 1e-8);
    if (!out.solvable()) continue;
    ++asserted;
    CHECK(out.passed());
  }
  CHECK(asserted > 0);
}

TEST_CASE("under the twisted convention either K alone is unconstrained") {
  const auto base = inputs_at(point(2, {1.0, 1.0, -1.0}, Reflection::kTwisted));
  std::mt19937 rng(44);
  auto mu = base;
  mu.k_mu = random_matrix(rng, 3, 3);
  CHECK(check_reflection_equation(mu, 1e-8).passed);
  auto nu = base;
  nu.k_nu = random_matrix(rng, 3, 3);
  CHECK(check_reflection_equation(nu, 1e-8).passed);
  auto both = mu;
  both.k_nu = nu.k_nu;
  CHECK_FALSE(check_reflection_equation(both, 1e-8).passed);
}

TEST_CASE("checks are scale blind") {
  const auto base = inputs_at(point(1, {1.0, -1.0}, Reflection::kCrossed));
  const Complex s(0.0, -7.5);
  std::mt19937 rng(19);
  for (int which = 0; which < 6; ++which) {
    auto in = base;
    ComplexMatrix* parts[] = {&in.k_mu, &in.k_nu, &in.s_mu_nu, &in.s_mu_nubar, &in.s_nu_mubar, &in.s_nubar_mubar};
    *parts[which] *= s;
    CHECK(check_reflection_equation(in, 1e-8).passed);
    INFO("input " << which);
    const ComplexMatrix noise = random_matrix(rng, parts[which]->rows(), parts[which]->cols());
    *parts[which] += 0.05 * parts[which]->norm() / noise.norm() * noise;
    CHECK_FALSE(check_reflection_equation(in, 1e-8).passed);
  }
}

TEST_CASE("coideal property") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 4; ++n) {
    for (int sample = 0; sample < 5; ++sample) {
      const Complex q = generic_q(rng);
      BoundaryParams eps;
      for (int i = 0; i <= n; ++i) eps.eps.push_back(2.0 * generic_x(rng) - 1.0);
      const auto r = check_coideal_property(vector_rep(n, q, generic_x(rng)), vector_rep(n, q, generic_x(rng)), eps, 1e-12);
      CHECK(r.passed);
      CHECK(r.lambda == Complex(1.0, 0.0));
    }
  }
  const auto a = vector_rep(2, kQ, 1.3), b = vector_rep(2, kQ, 0.4);
  CHECK(check_coideal_property(a, b, BoundaryParams{{0.0, 0.0, 0.0}}, 1e-12).passed);
  CHECK_THROWS_AS(check_coideal_property(a, vector_rep(1, kQ, 1.0), BoundaryParams{{0.0, 0.0, 0.0}}, 1e-12), Error);
}

TEST_CASE("evaluated B-matrix") {
  const auto p = point(1, {1.0, 1.0}, Reflection::kCrossed);
  const auto in = inputs_at(p);
  const auto b = b_matrices(in, 2);
  CHECK(b.with_nu.rows() == 4);
  CHECK(b.with_nu.cols() == 4);
  CHECK(b.with_nu.norm() > 1e-6);
  CHECK(b.with_nu.norm() < 1e6);
  const ComplexMatrix flip = flip_operator(2, 2);
  const ComplexMatrix zero = eval_b_matrix(ComplexMatrix::Zero(2, 2), flip * in.s_mu_nu, in.s_nu_mubar * flip);
  CHECK(zero.norm() == 0.0);
  CHECK_THROWS_AS(eval_b_matrix(identity(2), identity(6), identity(4)), Error);
}

TEST_CASE("B-matrix commutation with K") {
  for (const auto& p : {point(1, {1.0, 1.0}, Reflection::kCrossed), point(2, {0.0, 0.0, 0.0}, Reflection::kCrossed),
                        point(1, {2.0, Complex(0, 0.5)}, Reflection::kCrossed)}) {
    const auto out = run_b_commutation(p, 1e-8);
    REQUIRE(out.solvable());
    CHECK(out.passed());
  }

  const auto in = inputs_at(point(1, {1.0, -1.0}, Reflection::kCrossed));
  const auto b = b_matrices(in, 2);
  const auto base = check_b_commutation(b.with_nu, b.with_nubar, in.k_nu, 1e-8);
  REQUIRE(base.passed);
  const auto scaled = check_b_commutation(b.with_nu, b.with_nubar, 5.0 * in.k_nu, 1e-8);
  CHECK(scaled.passed);
  CHECK(std::abs(scaled.lambda - base.lambda) < 1e-12 * std::abs(base.lambda));

  ComplexMatrix perturbed = b.with_nubar;
  perturbed.block(2, 0, 2, 2) *= 1.1;
  CHECK_FALSE(check_b_commutation(b.with_nu, perturbed, in.k_nu, 1e-8).passed);
}

TEST_CASE("Sklyanin relation") {
  for (const auto& p : {point(1, {1.0, 1.0}, Reflection::kCrossed), point(1, {0.0, 0.0}, Reflection::kCrossed),
                        point(2, {0.0, 0.0, 0.0}, Reflection::kCrossed),
                        point(1, {Complex(0.3, 1.0), -2.0}, Reflection::kCrossed)}) {
    const auto out = run_sklyanin(p, 1e-8);
    REQUIRE(out.solvable());
    CHECK(out.passed());
  }
  CHECK_THROWS_AS(run_sklyanin(point(1, {1.0, 1.0}, Reflection::kCrossed, false), 1e-8), Error);
}

TEST_CASE("Sklyanin relation inherits sensitivity to K") {
  const auto p = point(1, {1.0, -1.0}, Reflection::kCrossed);
  const auto in = inputs_at(p);
  const auto setup = build_reflection_setup(p);
  const auto lambda = vector_rep(1, kQ, std::exp(*p.theta_lambda));
  const ComplexMatrix flip = flip_operator(2, 2);
  const auto plain = [&](const ComplexMatrix& s) -> ComplexMatrix { return flip * s; };
  const ComplexMatrix s_ml = *solve_bulk(setup.mu, lambda).normalized;
  const ComplexMatrix s_nl = *solve_bulk(setup.nu, lambda).normalized;
  const ComplexMatrix s_lmb = *solve_bulk(lambda, setup.mubar).normalized;
  const ComplexMatrix s_lnb = *solve_bulk(lambda, setup.nubar).normalized;

  SklyaninRSet rs{plain(in.s_mu_nu), plain(in.s_mu_nubar), flip * plain(in.s_nubar_mubar) * flip,
                  flip * plain(in.s_nu_mubar) * flip};
  const ComplexMatrix b2 = eval_b_matrix(in.k_nu, plain(s_nl), s_lnb * flip);
  const ComplexMatrix b1 = eval_b_matrix(in.k_mu, plain(s_ml), s_lmb * flip);
  CHECK(check_sklyanin(b1, b2, rs, 2, 1e-8).passed);

  ComplexMatrix bad_k = in.k_mu;
  bad_k(1, 0) *= 1.01;
  const ComplexMatrix bad_b1 = eval_b_matrix(bad_k, plain(s_ml), s_lmb * flip);
  CHECK_FALSE(check_sklyanin(bad_b1, b2, rs, 2, 1e-8).passed);
}

TEST_CASE("Sklyanin holds whenever the reflection equation does") {
  std::mt19937 rng(64);
  std::uniform_real_distribution<double> theta(-1.0, 1.0);
  for (int sample = 0; sample < 8; ++sample) {
    BoundaryPoint p;
    p.n = 1 + sample % 2;
    p.q = generic_q(rng);
    p.theta_mu = theta(rng);
    p.theta_nu = theta(rng);
    p.theta_lambda = theta(rng);
    for (int i = 0; i <= p.n; ++i) p.eps.eps.push_back(p.n == 1 ? generic_x(rng) : 0.0);
    const auto re = run_reflection_equation(p, 1e-8);
    if (!re.passed()) continue;
    const auto sk = run_sklyanin(p, 1e-8);
    if (sk.solvable()) CHECK(sk.passed());
  }
}
