#include "qaffine/qaffine_c.h"

#include <cmath>
#include <cstring>
#include <string>
#include <variant>

#include "qaffine/error.hpp"
#include "qaffine/intertwiner.hpp"
#include "qaffine/io.hpp"
#include "qaffine/pipeline.hpp"
#include "qaffine/toda_boundary.hpp"

using qaffine::Complex;
using qaffine::ComplexMatrix;

struct qa_matrix {
  ComplexMatrix m;
};

struct qa_document {
  std::variant<qaffine::MatrixDocument, qaffine::ReportDocument, qaffine::ScanDocument> doc;
  const qaffine::DocumentMeta& meta() const {
    return std::visit([](const auto& d) -> const qaffine::DocumentMeta& { return d.meta; }, doc);
  }
};

namespace {

thread_local std::string last_error;

qa_status fail(qa_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

qa_status status_of(qaffine::ErrorKind kind) {
  return kind == qaffine::ErrorKind::kDegenerate ? QA_DEGENERATE : QA_INVALID_INPUT;
}

template <class F>
qa_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const qaffine::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(QA_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(QA_INTERNAL_ERROR, "unknown error");
  }
}

Complex to_cpp(qa_complex z) { return {z.re, z.im}; }
qa_complex to_c(Complex z) { return {z.real(), z.imag()}; }

std::vector<Complex> to_cpp(const qa_complex* zs, std::size_t count) {
  if (count && !zs) throw qaffine::Error(qaffine::ErrorKind::kInvalidArgument, "null array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_cpp(zs[i]));
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) throw qaffine::Error(qaffine::ErrorKind::kInvalidArgument, what);
}

void check_common(int n, qa_complex q) {
  require(n >= 1, "n must be at least 1");
  require(std::isfinite(q.re) && std::isfinite(q.im), "q must be finite");
  require(std::abs(to_cpp(q)) > 0.0, "q must be nonzero");
}

qaffine::Reflection reflection_of(qa_reflection r) {
  switch (r) {
    case QA_REFLECTION_CROSSED: return qaffine::Reflection::kCrossed;
    case QA_REFLECTION_TWISTED: return qaffine::Reflection::kTwisted;
    case QA_REFLECTION_INVERSE: return qaffine::Reflection::kInverse;
  }
  throw qaffine::Error(qaffine::ErrorKind::kInvalidArgument, "unknown reflection convention");
}

std::string convention_tag(qaffine::Reflection r) {
  switch (r) {
    case qaffine::Reflection::kCrossed: return "antipode-dual";
    case qaffine::Reflection::kTwisted: return "antipode-dual-twisted";
    case qaffine::Reflection::kInverse: return "antipode-dual-inverse";
  }
  return "antipode-dual";
}

double rel_tol_or_default(double t) { return t > 0.0 ? t : qaffine::kDefaultRelTol; }

qa_status no_solution(const qaffine::IntertwinerSolution& s) {
  return fail(QA_DEGENERATE, "no solution: nullspace dimension " + std::to_string(s.dimension()));
}

qa_status emit(qa_document** out, qa_document* doc) {
  *out = doc;
  return QA_OK;
}

qa_document* matrix_document(qaffine::DocumentMeta meta, const qaffine::IntertwinerSolution& s) {
  meta.dimension = s.dimension();
  meta.residual = s.residual;
  return new qa_document{qaffine::MatrixDocument{std::move(meta), *s.normalized}};
}

template <class Vec>
qa_status copy_list(const Vec& values, typename Vec::value_type* out, std::size_t cap, std::size_t* count) {
  *count = values.size();
  if (values.size() > cap) return fail(QA_INVALID_INPUT, "list longer than the output buffer");
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
  return QA_OK;
}

}  // namespace

extern "C" {

const char* qa_last_error(void) { return last_error.c_str(); }

qa_status qa_parse_complex(const char* text, qa_complex* out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = to_c(qaffine::parse_complex(text));
    return QA_OK;
  });
}

qa_status qa_parse_complex_list(const char* text, qa_complex* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(text && count && (out || cap == 0), "null argument");
    const std::vector<Complex> values = qaffine::parse_complex_list(text);
    std::vector<qa_complex> converted;
    for (Complex z : values) converted.push_back(to_c(z));
    return copy_list(converted, out, cap, count);
  });
}

qa_status qa_parse_real_list(const char* text, double* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(text && count && (out || cap == 0), "null argument");
    return copy_list(qaffine::parse_real_list(text), out, cap, count);
  });
}

qa_status qa_matrix_create(size_t rows, size_t cols, const qa_complex* data, qa_matrix** out) {
  return guarded([&] {
    require(out && (data || rows * cols == 0), "null argument");
    auto* m = new qa_matrix{ComplexMatrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))};
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c)
        m->m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_cpp(data[r * cols + c]);
    *out = m;
    return QA_OK;
  });
}

size_t qa_matrix_rows(const qa_matrix* m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }
size_t qa_matrix_cols(const qa_matrix* m) { return m ? static_cast<size_t>(m->m.cols()) : 0; }

qa_status qa_matrix_get(const qa_matrix* m, size_t row, size_t col, qa_complex* out) {
  return guarded([&] {
    require(m && out, "null argument");
    require(row < qa_matrix_rows(m) && col < qa_matrix_cols(m), "index out of range");
    *out = to_c(m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
    return QA_OK;
  });
}

void qa_matrix_free(qa_matrix* m) { delete m; }

qa_status qa_projective_compare(const qa_matrix* a, const qa_matrix* b, double tol, int* equal, qa_complex* lambda,
                                double* deviation) {
  return guarded([&] {
    require(a && b && equal && lambda && deviation, "null argument");
    require(a->m.rows() == b->m.rows() && a->m.cols() == b->m.cols(), "shape mismatch");
    const auto cmp = qaffine::projective_compare(a->m, b->m, tol);
    *equal = cmp.equal ? 1 : 0;
    *lambda = to_c(cmp.lambda);
    *deviation = cmp.deviation;
    return QA_OK;
  });
}

qa_status qa_rep_check(int n, qa_complex q, qa_complex x, double tol, qa_document** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    check_common(n, q);
    require(tol > 0.0, "tol must be positive");
    require(std::abs(to_cpp(x)) > 0.0, "x must be nonzero");
    const auto rep = qaffine::vector_rep(n, to_cpp(q), to_cpp(x));
    auto vec = qaffine::to_record(qaffine::check_relations(rep, tol));
    auto dual = qaffine::to_record(qaffine::check_relations(qaffine::dual_rep(rep), tol));
    vec.name = "relations:vector";
    dual.name = "relations:dual";

    qaffine::ReportDocument doc;
    doc.meta.kind = "report";
    doc.meta.method = "relations";
    doc.meta.n = n;
    doc.meta.q = to_cpp(q);
    doc.meta.x = {to_cpp(x)};
    doc.meta.convention = "antipode-dual";
    doc.meta.tol = tol;
    const bool passed = vec.passed && dual.passed;
    doc.checks = {vec, dual};
    *out = new qa_document{std::move(doc)};
    return passed ? QA_OK : fail(QA_VERIFICATION_FAILED, "relation residual above tolerance");
  });
}

qa_status qa_smatrix(const qa_smatrix_request* req, qa_document** out) {
  return guarded([&] {
    require(req && out, "null argument");
    *out = nullptr;
    check_common(req->n, req->q);
    require(std::abs(to_cpp(req->x1)) > 0.0 && std::abs(to_cpp(req->x2)) > 0.0, "spectral parameters must be nonzero");
    const auto refl = reflection_of(req->reflection);
    auto a = qaffine::vector_rep(req->n, to_cpp(req->q), to_cpp(req->x1));
    auto b = qaffine::vector_rep(req->n, to_cpp(req->q), to_cpp(req->x2));
    if (req->dual_left) a = qaffine::reflected_rep(a, refl);
    if (req->dual_right) b = qaffine::reflected_rep(b, refl);
    const auto s = qaffine::solve_bulk(a, b, rel_tol_or_default(req->rel_tol));
    if (!s.unique()) return no_solution(s);

    qaffine::DocumentMeta meta;
    meta.kind = "smatrix";
    meta.method = "nullspace";
    meta.n = req->n;
    meta.q = to_cpp(req->q);
    meta.x = {to_cpp(req->x1), to_cpp(req->x2)};
    meta.convention = convention_tag(refl);
    meta.tol = rel_tol_or_default(req->rel_tol);
    return emit(out, matrix_document(std::move(meta), s));
  });
}

qa_status qa_kmatrix(const qa_kmatrix_request* req, qa_document** out) {
  return guarded([&] {
    require(req && out, "null argument");
    *out = nullptr;
    check_common(req->n, req->q);
    const Complex q = to_cpp(req->q);
    const Complex x = to_cpp(req->x);
    require(std::abs(x) > 0.0, "x must be nonzero");
    const qaffine::BoundaryParams eps{to_cpp(req->eps, req->eps_count)};
    require(eps.eps.size() == static_cast<std::size_t>(req->n) + 1, "eps must have n+1 entries");
    const double rel_tol = rel_tol_or_default(req->rel_tol);
    require(!req->has_eps_aggregate || req->method == QA_KMETHOD_CLOSED_FORM,
            "an eps aggregate applies only to the closed-form method");

    qaffine::DocumentMeta meta;
    meta.kind = "kmatrix";
    meta.n = req->n;
    meta.q = q;
    meta.x = {x};
    meta.eps = eps.eps;
    meta.tol = rel_tol;

    switch (req->method) {
      case QA_KMETHOD_EXPLICIT: {
        const auto s = qaffine::solve_explicit_k(req->n, q, x, eps, rel_tol);
        if (!s.unique()) return no_solution(s);
        meta.method = "paper";
        meta.convention = "paper";
        return emit(out, matrix_document(std::move(meta), s));
      }
      case QA_KMETHOD_GENERIC: {
        const auto refl = reflection_of(req->reflection);
        const auto rep = qaffine::vector_rep(req->n, q, x);
        const auto s = qaffine::solve_boundary(rep, qaffine::reflected_rep(rep, refl), eps, rel_tol);
        if (!s.unique()) return no_solution(s);
        meta.method = "generic";
        meta.convention = convention_tag(refl);
        return emit(out, matrix_document(std::move(meta), s));
      }
      case QA_KMETHOD_CLOSED_FORM: {
        std::optional<Complex> agg;
        if (req->has_eps_aggregate) agg = to_cpp(req->eps_aggregate);
        const qaffine::ClosedFormParams params(eps, agg);
        const ComplexMatrix k = qaffine::normalize_solution(qaffine::closed_form_k(req->n, q, x, params));
        const auto system = qaffine::explicit_boundary_system(req->n, q, x, eps);
        meta.method = "closed-form";
        meta.convention = "paper";
        meta.residual = (system.rows * qaffine::vec_row_major(k)).norm() / (system.rows.norm() * k.norm());
        return emit(out, new qa_document{qaffine::MatrixDocument{std::move(meta), k}});
      }
    }
    return fail(QA_INVALID_INPUT, "unknown K-matrix method");
  });
}

qa_status qa_verify(const qa_verify_request* req, qa_document** out) {
  return guarded([&] {
    require(req && out, "null argument");
    *out = nullptr;
    check_common(req->n, req->q);
    require(req->tol > 0.0, "tol must be positive");
    require(req->rapidity_count == 0 || req->rapidities, "null rapidities");
    std::vector<double> thetas(req->rapidities, req->rapidities + req->rapidity_count);
    for (double t : thetas) require(std::isfinite(t), "rapidities must be finite");
    const auto refl = reflection_of(req->reflection);
    const double rel_tol = rel_tol_or_default(req->rel_tol);
    const Complex q = to_cpp(req->q);

    qaffine::BoundaryPoint point;
    point.n = req->n;
    point.q = q;
    point.reflection = refl;
    point.rel_tol = rel_tol;
    point.eps.eps = to_cpp(req->eps, req->eps_count);

    const auto need = [&](std::size_t count, const char* what) {
      require(thetas.size() == count, what);
      if (req->check != QA_CHECK_YBE)
        require(point.eps.eps.size() == static_cast<std::size_t>(req->n) + 1, "eps must have n+1 entries");
      if (count >= 2) {
        point.theta_mu = thetas[0];
        point.theta_nu = thetas[1];
      }
      if (count >= 3) point.theta_lambda = thetas[2];
    };

    qaffine::CheckOutcome outcome;
    switch (req->check) {
      case QA_CHECK_YBE:
        need(3, "ybe takes three rapidities");
        outcome = qaffine::run_ybe(req->n, q, thetas, req->tol, rel_tol);
        break;
      case QA_CHECK_RE:
        need(2, "re takes two rapidities");
        outcome = qaffine::run_reflection_equation(point, req->tol);
        break;
      case QA_CHECK_COIDEAL:
        need(2, "coideal takes two rapidities");
        outcome = qaffine::run_coideal(point, req->tol);
        break;
      case QA_CHECK_SKLYANIN:
        need(3, "sklyanin takes three rapidities");
        outcome = qaffine::run_sklyanin(point, req->tol);
        break;
      case QA_CHECK_BCOMM:
        need(2, "b-comm takes two rapidities");
        outcome = qaffine::run_b_commutation(point, req->tol);
        break;
      default:
        return fail(QA_INVALID_INPUT, "unknown check");
    }
    if (!outcome.solvable()) return fail(QA_DEGENERATE, "no solution: " + outcome.defect);

    qaffine::ReportDocument doc;
    doc.meta.kind = "report";
    doc.meta.method = outcome.report->name;
    doc.meta.n = req->n;
    doc.meta.q = q;
    for (double t : thetas) doc.meta.rapidities.emplace_back(t, 0.0);
    if (req->check != QA_CHECK_YBE) doc.meta.eps = point.eps.eps;
    doc.meta.convention = convention_tag(refl);
    doc.meta.tol = req->tol;
    doc.checks = {qaffine::to_record(*outcome.report)};
    const bool passed = outcome.passed();
    *out = new qa_document{std::move(doc)};
    return passed ? QA_OK : fail(QA_VERIFICATION_FAILED, outcome.report->name + " check failed");
  });
}

qa_status qa_scan(const qa_scan_request* req, qa_document** out) {
  return guarded([&] {
    require(req && out, "null argument");
    *out = nullptr;
    check_common(req->n, req->q);
    qaffine::ScanRequest sr;
    switch (req->kind) {
      case QA_SCAN_BULK: sr.kind = qaffine::ScanKind::kBulk; break;
      case QA_SCAN_BOUNDARY: sr.kind = qaffine::ScanKind::kBoundary; break;
      case QA_SCAN_EXPLICIT: sr.kind = qaffine::ScanKind::kExplicitBoundary; break;
      default: return fail(QA_INVALID_INPUT, "unknown scan kind");
    }
    sr.n = req->n;
    sr.q = to_cpp(req->q);
    sr.x = to_cpp(req->x);
    require(std::abs(sr.x) > 0.0, "x must be nonzero");
    sr.eps.eps = to_cpp(req->eps, req->eps_count);
    sr.reflection = reflection_of(req->reflection);
    sr.rel_tol = rel_tol_or_default(req->rel_tol);

    std::vector<std::vector<Complex>> grid;
    std::vector<std::vector<Complex>> recorded;
    std::string axis;
    if (req->axis == QA_AXIS_EPS) {
      require(sr.kind != qaffine::ScanKind::kBulk, "bulk scans run along theta");
      const auto values = to_cpp(req->values, req->value_count);
      require(!values.empty(), "eps scan needs at least one value");
      const std::size_t points = static_cast<std::size_t>(std::pow(values.size(), req->n + 1));
      require(points <= 1000000, "eps grid too large");
      sr.axis = qaffine::ScanAxis::kEps;
      grid = qaffine::product_grid(values, static_cast<std::size_t>(req->n) + 1);
      recorded = grid;
      axis = "eps";
    } else if (req->axis == QA_AXIS_THETA) {
      require(req->theta_count >= 1 && req->theta_count <= 1000000, "theta grid needs 1..1e6 points");
      if (sr.kind != qaffine::ScanKind::kBulk)
        require(sr.eps.eps.size() == static_cast<std::size_t>(req->n) + 1, "eps must have n+1 entries");
      sr.axis = qaffine::ScanAxis::kSpectral;
      const Complex from = to_cpp(req->theta_from);
      const Complex to = to_cpp(req->theta_to);
      for (std::size_t k = 0; k < req->theta_count; ++k) {
        const double t = req->theta_count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(req->theta_count - 1);
        const Complex theta = from + t * (to - from);
        recorded.push_back({theta});
        grid.push_back({std::exp(theta)});
      }
      axis = "theta";
    } else {
      return fail(QA_INVALID_INPUT, "unknown scan axis");
    }

    const auto result = qaffine::dimension_scan(sr, std::move(grid));
    qaffine::ScanDocument doc;
    doc.meta.kind = "scan";
    doc.meta.method = qaffine::scan_kind_name(sr.kind);
    doc.meta.n = sr.n;
    doc.meta.q = sr.q;
    doc.meta.x = {sr.x};
    if (sr.axis == qaffine::ScanAxis::kSpectral) doc.meta.eps = sr.eps.eps;
    doc.meta.convention = sr.kind == qaffine::ScanKind::kExplicitBoundary ? "paper" : convention_tag(sr.reflection);
    doc.meta.tol = sr.rel_tol;
    doc.axis = axis;
    doc.grid = std::move(recorded);
    doc.dims = result.dims;
    return emit(out, new qa_document{std::move(doc)});
  });
}

qa_status qa_document_parse(const char* bytes, size_t len, qa_document** out) {
  return guarded([&] {
    require(bytes && out, "null argument");
    const std::string_view view(bytes, len);
    const std::string kind = qaffine::document_kind(view);
    if (kind == "report") return emit(out, new qa_document{qaffine::deserialize_report(view)});
    if (kind == "scan") return emit(out, new qa_document{qaffine::deserialize_scan(view)});
    return emit(out, new qa_document{qaffine::deserialize_matrix(view)});
  });
}

qa_status qa_document_serialize(const qa_document* doc, char** out) {
  return guarded([&] {
    require(doc && out, "null argument");
    const std::string text = std::visit(
        [](const auto& d) -> std::string {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, qaffine::MatrixDocument>) return qaffine::serialize_matrix(d);
          else if constexpr (std::is_same_v<T, qaffine::ReportDocument>) return qaffine::serialize_report(d);
          else return qaffine::serialize_scan(d);
        },
        doc->doc);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return QA_OK;
  });
}

void qa_string_free(char* s) { delete[] s; }

const char* qa_document_kind(const qa_document* doc) { return doc ? doc->meta().kind.c_str() : ""; }

qa_status qa_document_matrix(const qa_document* doc, qa_matrix** out) {
  return guarded([&] {
    require(doc && out, "null argument");
    const auto* m = std::get_if<qaffine::MatrixDocument>(&doc->doc);
    require(m != nullptr, "document holds no matrix");
    *out = new qa_matrix{m->matrix};
    return QA_OK;
  });
}

size_t qa_document_check_count(const qa_document* doc) {
  const auto* r = doc ? std::get_if<qaffine::ReportDocument>(&doc->doc) : nullptr;
  return r ? r->checks.size() : 0;
}

qa_status qa_document_check(const qa_document* doc, size_t index, qa_check_info* out) {
  return guarded([&] {
    require(doc && out, "null argument");
    require(index < qa_document_check_count(doc), "check index out of range");
    const auto& c = std::get<qaffine::ReportDocument>(doc->doc).checks[index];
    *out = {c.name.c_str(), c.deviation, to_c(c.lambda), c.tol, c.passed ? 1 : 0};
    return QA_OK;
  });
}

long qa_document_dimension(const qa_document* doc) {
  if (!doc || !doc->meta().dimension) return -1;
  return static_cast<long>(*doc->meta().dimension);
}

void qa_document_free(qa_document* doc) { delete doc; }

}  // extern "C"
