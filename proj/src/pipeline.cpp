#include "qaffine/pipeline.hpp"

#include <cmath>

#include "qaffine/error.hpp"

namespace qaffine {
namespace {

Complex spectral(double theta) { return std::exp(Complex(theta, 0.0)); }

std::string describe(const char* name, const IntertwinerSolution& s) {
  return std::string(name) + " has nullspace dimension " + std::to_string(s.dimension());
}

std::vector<std::pair<std::string, std::string>> point_context(const BoundaryPoint& p) {
  std::string eps;
  for (Complex e : p.eps.eps) eps += (eps.empty() ? "" : ",") + format_complex(e);
  std::vector<std::pair<std::string, std::string>> ctx = {{"n", std::to_string(p.n)},
                                                          {"q", format_complex(p.q)},
                                                          {"theta_mu", format_double(p.theta_mu)},
                                                          {"theta_nu", format_double(p.theta_nu)}};
  if (p.theta_lambda) ctx.emplace_back("theta_lambda", format_double(*p.theta_lambda));
  ctx.emplace_back("eps", eps);
  ctx.emplace_back("reflection", reflection_name(p.reflection));
  return ctx;
}

// Plain R on V^a (x) V^b from the braiding S : V^a (x) V^b -> V^b (x) V^a.
ComplexMatrix plain_r(const ComplexMatrix& s, std::size_t dim_a, std::size_t dim_b) {
  return flip_operator(dim_b, dim_a) * s;
}

}  // namespace

bool ReflectionSetup::complete() const { return defect().empty(); }

std::string ReflectionSetup::defect() const {
  const std::pair<const char*, const IntertwinerSolution*> parts[] = {
      {"K_mu", &k_mu},           {"K_nu", &k_nu},           {"S_{mu nu}", &s_mu_nu},
      {"S_{mu nubar}", &s_mu_nubar}, {"S_{nu mubar}", &s_nu_mubar}, {"S_{nubar mubar}", &s_nubar_mubar}};
  for (const auto& [name, sol] : parts) {
    if (!sol->unique()) return describe(name, *sol);
  }
  return {};
}

ReflectionInputs ReflectionSetup::inputs() const {
  if (!complete()) throw Error(ErrorKind::kDegenerate, defect());
  return {*k_mu.normalized,      *k_nu.normalized,       *s_mu_nu.normalized,
          *s_mu_nubar.normalized, *s_nu_mubar.normalized, *s_nubar_mubar.normalized};
}

ReflectionSetup build_reflection_setup(const BoundaryPoint& p) {
  ReflectionSetup s;
  s.mu = vector_rep(p.n, p.q, spectral(p.theta_mu));
  s.nu = vector_rep(p.n, p.q, spectral(p.theta_nu));
  s.mubar = reflected_rep(s.mu, p.reflection);
  s.nubar = reflected_rep(s.nu, p.reflection);
  s.k_mu = solve_boundary(s.mu, s.mubar, p.eps, p.rel_tol);
  s.k_nu = solve_boundary(s.nu, s.nubar, p.eps, p.rel_tol);
  s.s_mu_nu = solve_bulk(s.mu, s.nu, p.rel_tol);
  s.s_mu_nubar = solve_bulk(s.mu, s.nubar, p.rel_tol);
  s.s_nu_mubar = solve_bulk(s.nu, s.mubar, p.rel_tol);
  s.s_nubar_mubar = solve_bulk(s.nubar, s.mubar, p.rel_tol);
  return s;
}

CheckOutcome run_ybe(int n, Complex q, const std::vector<double>& thetas, double tol, double rel_tol) {
  if (thetas.size() != 3) throw Error(ErrorKind::kInvalidArgument, "ybe needs exactly three rapidities");
  const EvaluationRep a = vector_rep(n, q, spectral(thetas[0]));
  const EvaluationRep b = vector_rep(n, q, spectral(thetas[1]));
  const EvaluationRep c = vector_rep(n, q, spectral(thetas[2]));
  const IntertwinerSolution s_ab = solve_bulk(a, b, rel_tol);
  const IntertwinerSolution s_ac = solve_bulk(a, c, rel_tol);
  const IntertwinerSolution s_bc = solve_bulk(b, c, rel_tol);

  CheckOutcome out;
  for (const auto& [name, sol] : {std::pair{"S_ab", &s_ab}, {"S_ac", &s_ac}, {"S_bc", &s_bc}}) {
    if (!sol->unique()) {
      out.defect = describe(name, *sol);
      return out;
    }
  }
  VerificationReport r =
      check_ybe(*s_ab.normalized, *s_ac.normalized, *s_bc.normalized, {a.dim(), b.dim(), c.dim()}, tol);
  r.context = {{"n", std::to_string(n)},
               {"q", format_complex(q)},
               {"rapidities", format_double(thetas[0]) + "," + format_double(thetas[1]) + "," +
                                  format_double(thetas[2])}};
  out.report = std::move(r);
  return out;
}

CheckOutcome run_reflection_equation(const BoundaryPoint& point, double tol) {
  const ReflectionSetup s = build_reflection_setup(point);
  CheckOutcome out;
  if (!s.complete()) {
    out.defect = s.defect();
    return out;
  }
  VerificationReport r = check_reflection_equation(s.inputs(), tol);
  r.context = point_context(point);
  out.report = std::move(r);
  return out;
}

CheckOutcome run_b_commutation(const BoundaryPoint& point, double tol) {
  const ReflectionSetup s = build_reflection_setup(point);
  CheckOutcome out;
  if (!s.complete()) {
    out.defect = s.defect();
    return out;
  }
  const ReflectionInputs in = s.inputs();
  const std::size_t dim = s.mu.dim();
  const ComplexMatrix flip = flip_operator(dim, dim);

  // Companion nu: R_in = P S(mu, nu), R_op_out = P (P S(nu, mubar)) P.
  const ComplexMatrix b_nu = eval_b_matrix(in.k_mu, flip * in.s_mu_nu, in.s_nu_mubar * flip);
  const ComplexMatrix b_nubar = eval_b_matrix(in.k_mu, flip * in.s_mu_nubar, in.s_nubar_mubar * flip);
  VerificationReport r = check_b_commutation(b_nu, b_nubar, in.k_nu, tol);
  r.context = point_context(point);
  out.report = std::move(r);
  return out;
}

CheckOutcome run_sklyanin(const BoundaryPoint& point, double tol) {
  if (!point.theta_lambda) throw Error(ErrorKind::kInvalidArgument, "sklyanin needs a companion rapidity");
  const ReflectionSetup s = build_reflection_setup(point);
  CheckOutcome out;
  if (!s.complete()) {
    out.defect = s.defect();
    return out;
  }
  const EvaluationRep lambda = vector_rep(point.n, point.q, spectral(*point.theta_lambda));
  const IntertwinerSolution s_mu_lambda = solve_bulk(s.mu, lambda, point.rel_tol);
  const IntertwinerSolution s_nu_lambda = solve_bulk(s.nu, lambda, point.rel_tol);
  const IntertwinerSolution s_lambda_mubar = solve_bulk(lambda, s.mubar, point.rel_tol);
  const IntertwinerSolution s_lambda_nubar = solve_bulk(lambda, s.nubar, point.rel_tol);
  for (const auto& [name, sol] : {std::pair{"S_{mu lambda}", &s_mu_lambda},
                                  {"S_{nu lambda}", &s_nu_lambda},
                                  {"S_{lambda mubar}", &s_lambda_mubar},
                                  {"S_{lambda nubar}", &s_lambda_nubar}}) {
    if (!sol->unique()) {
      out.defect = describe(name, *sol);
      return out;
    }
  }

  const ReflectionInputs in = s.inputs();
  const std::size_t dim = s.mu.dim();
  const std::size_t dl = lambda.dim();
  const ComplexMatrix b1 =
      eval_b_matrix(in.k_mu, plain_r(*s_mu_lambda.normalized, dim, dl), *s_lambda_mubar.normalized * flip_operator(dim, dl));
  const ComplexMatrix b2 =
      eval_b_matrix(in.k_nu, plain_r(*s_nu_lambda.normalized, dim, dl), *s_lambda_nubar.normalized * flip_operator(dim, dl));

  const ComplexMatrix flip = flip_operator(dim, dim);
  SklyaninRSet rs;
  rs.r_mu_nu = plain_r(in.s_mu_nu, dim, dim);
  rs.r_mu_nubar = plain_r(in.s_mu_nubar, dim, dim);
  rs.prp_nubar_mubar = flip * plain_r(in.s_nubar_mubar, dim, dim) * flip;
  rs.prp_nu_mubar = flip * plain_r(in.s_nu_mubar, dim, dim) * flip;

  VerificationReport r = check_sklyanin(b1, b2, rs, dl, tol);
  r.context = point_context(point);
  out.report = std::move(r);
  return out;
}

CheckOutcome run_coideal(const BoundaryPoint& point, double tol) {
  const EvaluationRep a = vector_rep(point.n, point.q, spectral(point.theta_mu));
  const EvaluationRep b = vector_rep(point.n, point.q, spectral(point.theta_nu));
  VerificationReport r = check_coideal_property(a, b, point.eps, tol);
  r.context = point_context(point);
  CheckOutcome out;
  out.report = std::move(r);
  return out;
}

}  // namespace qaffine
