#include "qaffine/io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "qaffine/error.hpp"

namespace qaffine {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, std::string_view whole) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw Error(ErrorKind::kParse, "malformed number '" + std::string(whole) + "'");
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::kParse, "malformed number '" + std::string(whole) + "'");
  if (!std::isfinite(v)) throw Error(ErrorKind::kNonFinite, "non-finite value '" + std::string(whole) + "'");
  return v;
}

// Coefficient of i: "", "+" and "-" stand for 1, 1 and -1.
double parse_imag(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

// ---- writer ----

void emit(const Json& j, std::string& out, int indent);

void emit_number(double v, std::string& out) {
  if (!std::isfinite(v)) throw Error(ErrorKind::kNonFinite, "cannot serialize non-finite value");
  out += format_double(v);
}

void emit_inline(const Json& j, std::string& out) {
  if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ',';
      emit_inline(j[i], out);
    }
    out += ']';
  } else if (j.is_number_float()) {
    emit_number(j.get<double>(), out);
  } else {
    out += j.dump();
  }
}

void emit(const Json& j, std::string& out, int indent) {
  if (!j.is_object()) {
    emit_inline(j, out);
    return;
  }
  if (j.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) {
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    out += Json(key).dump();
    out += ": ";
    emit(value, out, indent + 2);
    if (++i < j.size()) out += ',';
    out += '\n';
  }
  out.append(static_cast<std::size_t>(indent), ' ');
  out += '}';
}

std::string finish(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += '\n';
  return out;
}

Json complex_json(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::kNonFinite, "cannot serialize non-finite value");
  return Json::array({z.real(), z.imag()});
}

Json complex_list_json(const std::vector<Complex>& zs) {
  Json arr = Json::array();
  for (Complex z : zs) arr.push_back(complex_json(z));
  return arr;
}

Json meta_json(const DocumentMeta& m) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = m.kind;
  if (m.method) j["method"] = *m.method;
  j["n"] = m.n;
  j["q"] = complex_json(m.q);
  if (!m.x.empty() || m.rapidities.empty()) {
    j["x"] = complex_list_json(m.x);
  } else {
    j["rapidities"] = complex_list_json(m.rapidities);
  }
  j["eps"] = complex_list_json(m.eps);
  j["convention"] = m.convention;
  j["normalization"] = kNormalization;
  j["tol"] = m.tol;
  if (m.dimension) j["dimension"] = *m.dimension;
  if (m.residual) j["residual"] = *m.residual;
  return j;
}

// ---- reader ----

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorKind::kParse, "invalid document: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) schema_error(std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorKind::kNonFinite, std::string(what) + " is not finite");
  return v;
}

std::string string_at(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) schema_error(std::string("'") + key + "' is not a string");
  return v.get<std::string>();
}

Complex complex_at(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) schema_error(std::string(what) + " is not a [re,im] pair");
  return {number_at(j[0], what), number_at(j[1], what)};
}

std::vector<Complex> complex_list_at(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " is not a list");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(complex_at(e, what));
  return out;
}

std::size_t count_at(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) schema_error(std::string(what) + " is not a non-negative integer");
  return j.get<std::size_t>();
}

Json parse_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

DocumentMeta meta_from(const Json& root, const char* expected_kind) {
  const Json& j = field(root, "meta");
  if (!j.is_object()) schema_error("'meta' is not an object");
  const std::string version = string_at(j, "schema_version");
  if (version != kSchemaVersion) throw Error(ErrorKind::kVersion, "unsupported schema_version '" + version + "'");
  DocumentMeta m;
  m.kind = string_at(j, "kind");
  if (expected_kind && m.kind != expected_kind)
    schema_error("kind '" + m.kind + "' where '" + expected_kind + "' was expected");
  if (j.contains("method")) m.method = string_at(j, "method");
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) schema_error("'n' is not a positive integer");
  m.n = n.get<int>();
  m.q = complex_at(field(j, "q"), "q");
  if (j.contains("x")) m.x = complex_list_at(j.at("x"), "x");
  else if (j.contains("rapidities")) m.rapidities = complex_list_at(j.at("rapidities"), "rapidities");
  else schema_error("missing field 'x' or 'rapidities'");
  m.eps = complex_list_at(field(j, "eps"), "eps");
  m.convention = string_at(j, "convention");
  if (!is_known_convention(m.convention)) schema_error("unknown convention '" + m.convention + "'");
  if (string_at(j, "normalization") != kNormalization) schema_error("unknown normalization");
  m.tol = number_at(field(j, "tol"), "tol");
  if (j.contains("dimension")) m.dimension = count_at(j.at("dimension"), "dimension");
  if (j.contains("residual")) m.residual = number_at(j.at("residual"), "residual");
  return m;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::kParse, "empty complex literal");
  if (const std::size_t at = s.find('@'); at != std::string_view::npos) {
    const double r = parse_real(s.substr(0, at), s);
    const double phi = parse_real(s.substr(at + 1), s);
    return std::polar(r, phi);
  }
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, s), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the exponent sign of a number.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, s)};
  return {parse_real(body.substr(0, split), s), parse_imag(body.substr(split), s)};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (std::string_view part : split_commas(text)) out.push_back(parse_complex(part));
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view part : split_commas(text)) out.push_back(parse_real(part, part));
  return out;
}

bool is_known_convention(std::string_view c) {
  return c == "paper" || c == "antipode-dual" || c == "antipode-dual-twisted" || c == "antipode-dual-inverse";
}

CheckRecord to_record(const VerificationReport& r) { return {r.name, r.deviation, r.lambda, r.tol, r.passed}; }

std::string serialize_matrix(const MatrixDocument& doc) {
  Json j;
  j["meta"] = meta_json(doc.meta);
  Json data = Json::array();
  for (Eigen::Index r = 0; r < doc.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < doc.matrix.cols(); ++c) data.push_back(complex_json(doc.matrix(r, c)));
  Json m;
  m["rows"] = doc.matrix.rows();
  m["cols"] = doc.matrix.cols();
  m["data"] = std::move(data);
  j["matrix"] = std::move(m);
  return finish(j);
}

MatrixDocument deserialize_matrix(std::string_view bytes) {
  const Json root = parse_json(bytes);
  MatrixDocument doc;
  doc.meta = meta_from(root, nullptr);
  const Json& m = field(root, "matrix");
  const std::size_t rows = count_at(field(m, "rows"), "rows");
  const std::size_t cols = count_at(field(m, "cols"), "cols");
  const Json& data = field(m, "data");
  if (!data.is_array()) schema_error("'data' is not a list");
  if (data.size() != rows * cols)
    throw Error(ErrorKind::kShape, "data length " + std::to_string(data.size()) + " does not match " +
                                       std::to_string(rows) + "x" + std::to_string(cols));
  doc.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < doc.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < doc.matrix.cols(); ++c) doc.matrix(r, c) = complex_at(data[k++], "matrix entry");
  return doc;
}

std::string serialize_report(const ReportDocument& doc) {
  Json j;
  j["meta"] = meta_json(doc.meta);
  Json checks = Json::array();
  for (const CheckRecord& c : doc.checks) {
    Json e;
    e["name"] = c.name;
    e["deviation"] = c.deviation;
    e["lambda"] = complex_json(c.lambda);
    e["tol"] = c.tol;
    e["passed"] = c.passed;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  std::string out;
  // Check entries are objects inside an array; written one per line.
  out += "{\n  \"meta\": ";
  emit(j["meta"], out, 2);
  out += ",\n  \"checks\": [";
  for (std::size_t i = 0; i < j["checks"].size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    const Json& e = j["checks"][i];
    out += '{';
    std::size_t k = 0;
    for (const auto& [key, value] : e.items()) {
      if (k++) out += ", ";
      out += Json(key).dump();
      out += ": ";
      emit_inline(value, out);
    }
    out += '}';
  }
  out += j["checks"].empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

ReportDocument deserialize_report(std::string_view bytes) {
  const Json root = parse_json(bytes);
  ReportDocument doc;
  doc.meta = meta_from(root, "report");
  const Json& checks = field(root, "checks");
  if (!checks.is_array()) schema_error("'checks' is not a list");
  for (const Json& e : checks) {
    CheckRecord c;
    c.name = string_at(e, "name");
    c.deviation = number_at(field(e, "deviation"), "deviation");
    c.lambda = complex_at(field(e, "lambda"), "lambda");
    c.tol = number_at(field(e, "tol"), "tol");
    const Json& passed = field(e, "passed");
    if (!passed.is_boolean()) schema_error("'passed' is not a boolean");
    c.passed = passed.get<bool>();
    if (c.passed != (c.deviation <= c.tol)) schema_error("'passed' disagrees with deviation and tol");
    doc.checks.push_back(std::move(c));
  }
  return doc;
}

std::string serialize_scan(const ScanDocument& doc) {
  if (doc.grid.size() != doc.dims.size()) throw Error(ErrorKind::kShape, "scan grid and dims differ in length");
  Json j;
  j["meta"] = meta_json(doc.meta);
  j["axis"] = doc.axis;
  Json grid = Json::array();
  for (const auto& point : doc.grid) grid.push_back(complex_list_json(point));
  j["grid"] = std::move(grid);
  j["dims"] = doc.dims;
  return finish(j);
}

ScanDocument deserialize_scan(std::string_view bytes) {
  const Json root = parse_json(bytes);
  ScanDocument doc;
  doc.meta = meta_from(root, "scan");
  doc.axis = string_at(root, "axis");
  const Json& grid = field(root, "grid");
  const Json& dims = field(root, "dims");
  if (!grid.is_array() || !dims.is_array()) schema_error("'grid' and 'dims' must be lists");
  if (grid.size() != dims.size()) throw Error(ErrorKind::kShape, "scan grid and dims differ in length");
  for (const Json& p : grid) doc.grid.push_back(complex_list_at(p, "grid point"));
  for (const Json& d : dims) doc.dims.push_back(count_at(d, "dimension"));
  return doc;
}

std::string document_kind(std::string_view bytes) {
  const Json root = parse_json(bytes);
  return string_at(field(root, "meta"), "kind");
}

}  // namespace qaffine
