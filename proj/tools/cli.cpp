#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "qaffine/qaffine_c.h"

namespace qaffine_cli {
namespace {

class Failure {
 public:
  Failure(int code, std::string message) : code(code), message(std::move(message)) {}
  int code;
  std::string message;
};

int exit_code(qa_status s) {
  switch (s) {
    case QA_OK: return kSuccess;
    case QA_VERIFICATION_FAILED: return kVerificationFailed;
    case QA_DEGENERATE: return kDegenerate;
    default: return kInvalidInput;
  }
}

void check(qa_status s) {
  if (s != QA_OK) throw Failure(exit_code(s), qa_last_error());
}

qa_complex complex_arg(const std::string& text, const char* flag) {
  qa_complex z{};
  if (qa_parse_complex(text.c_str(), &z) != QA_OK) throw Failure(kInvalidInput, std::string(flag) + ": " + qa_last_error());
  return z;
}

std::vector<qa_complex> complex_list_arg(const std::string& text, const char* flag) {
  std::size_t count = 0;
  if (qa_parse_complex_list(text.c_str(), nullptr, 0, &count) != QA_OK && count == 0)
    throw Failure(kInvalidInput, std::string(flag) + ": " + qa_last_error());
  std::vector<qa_complex> out(count);
  if (qa_parse_complex_list(text.c_str(), out.data(), out.size(), &count) != QA_OK)
    throw Failure(kInvalidInput, std::string(flag) + ": " + qa_last_error());
  return out;
}

std::vector<double> real_list_arg(const std::string& text, const char* flag) {
  std::size_t count = 0;
  if (qa_parse_real_list(text.c_str(), nullptr, 0, &count) != QA_OK && count == 0)
    throw Failure(kInvalidInput, std::string(flag) + ": " + qa_last_error());
  std::vector<double> out(count);
  if (qa_parse_real_list(text.c_str(), out.data(), out.size(), &count) != QA_OK)
    throw Failure(kInvalidInput, std::string(flag) + ": " + qa_last_error());
  return out;
}

struct DocumentDeleter {
  void operator()(qa_document* d) const { qa_document_free(d); }
};
using DocumentPtr = std::unique_ptr<qa_document, DocumentDeleter>;

std::string serialize(const qa_document* doc) {
  char* text = nullptr;
  check(qa_document_serialize(doc, &text));
  std::string out(text);
  qa_string_free(text);
  return out;
}

// The document is fully serialized before the file is opened, so a failed
// command never leaves a partial file behind.
void write_document(const qa_document* doc, const std::string& path, std::ostream& out) {
  const std::string text = serialize(doc);
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Failure(kInvalidInput, "cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw Failure(kInvalidInput, "failed writing '" + path + "'");
}

std::string verdict(bool passed, bool color) {
  if (!color) return passed ? "PASS" : "FAIL";
  return passed ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
}

void print_checks(const qa_document* doc, std::ostream& out, bool color) {
  for (std::size_t i = 0; i < qa_document_check_count(doc); ++i) {
    qa_check_info info{};
    check(qa_document_check(doc, i, &info));
    char dev[32];
    const auto r = std::to_chars(dev, dev + sizeof dev, info.deviation);
    out << verdict(info.passed != 0, color) << ' ' << info.name << " deviation=" << std::string(dev, r.ptr)
        << " tol=" << info.tol << '\n';
  }
}

const std::map<std::string, qa_reflection> kConventions = {
    {"crossed", QA_REFLECTION_CROSSED}, {"twisted", QA_REFLECTION_TWISTED}, {"inverse", QA_REFLECTION_INVERSE}};

struct Common {
  int n = 1;
  std::string q;
  std::string convention = "crossed";
  double rel_tol = 1e-9;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "Rank n of a_n^(1) (vector dimension n+1)")->required()->check(CLI::Range(1, 64));
  cmd->add_option("--q", c.q, "Deformation parameter, a+bi or r@phi")->required();
}

void add_convention(CLI::App* cmd, Common& c) {
  cmd->add_option("--convention", c.convention, "Conjugate module for reflections")
      ->check(CLI::IsMember({"crossed", "twisted", "inverse"}));
  cmd->add_option("--rel-tol", c.rel_tol, "Relative singular-value cutoff")->check(CLI::PositiveNumber);
}

std::pair<qa_complex, std::size_t> split_theta_spec(const std::string& spec, qa_complex& to) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos) throw Failure(kInvalidInput, "--grid: expected a:b:count");
  const qa_complex from = complex_arg(spec.substr(0, first), "--grid");
  to = complex_arg(spec.substr(first + 1, second - first - 1), "--grid");
  const std::string count_text = spec.substr(second + 1);
  std::size_t count = 0;
  const auto r = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (r.ec != std::errc() || r.ptr != count_text.data() + count_text.size() || count == 0)
    throw Failure(kInvalidInput, "--grid: count must be a positive integer");
  return {from, count};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"Intertwiners, reflection matrices and consistency checks for U_q(a_n^(1))", "qaffine"};
  app.require_subcommand(1);

  Common common;
  std::string out_path;

  auto* rep_check = app.add_subcommand("rep-check", "Check the defining relations of the vector representation");
  add_common(rep_check, common);
  std::string x_text;
  double tol = 1e-10;
  rep_check->add_option("--x", x_text, "Spectral parameter")->required();
  rep_check->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
  rep_check->add_option("--out", out_path, "Report file");

  auto* smatrix = app.add_subcommand("smatrix", "Solve the bulk S-matrix");
  add_common(smatrix, common);
  add_convention(smatrix, common);
  std::string x1_text, x2_text;
  bool dual_left = false, dual_right = false;
  smatrix->add_option("--x1", x1_text, "Spectral parameter of the left leg")->required();
  smatrix->add_option("--x2", x2_text, "Spectral parameter of the right leg")->required();
  smatrix->add_flag("--dual-left", dual_left, "Left leg is the conjugate module");
  smatrix->add_flag("--dual-right", dual_right, "Right leg is the conjugate module");
  smatrix->add_option("--out", out_path, "Output file (stdout when omitted)");

  auto* kmatrix = app.add_subcommand("kmatrix", "Solve the boundary K-matrix");
  add_common(kmatrix, common);
  add_convention(kmatrix, common);
  std::string eps_text, method = "generic", agg_text;
  kmatrix->add_option("--x", x_text, "Spectral parameter")->required();
  kmatrix->add_option("--eps", eps_text, "Boundary parameters eps_0,...,eps_n")->required();
  kmatrix->add_option("--method", method, "paper | generic | closed-form")
      ->check(CLI::IsMember({"paper", "generic", "closed-form"}));
  kmatrix->add_option("--eps-aggregate", agg_text, "Override the aggregate eps in the closed form");
  kmatrix->add_option("--out", out_path, "Output file (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "Run a consistency check");
  add_common(verify, common);
  add_convention(verify, common);
  std::string check_name, rapidities_text;
  double verify_tol = 1e-8;
  verify->add_option("check", check_name, "ybe | re | coideal | sklyanin | b-comm")
      ->required()
      ->check(CLI::IsMember({"ybe", "re", "coideal", "sklyanin", "b-comm"}));
  verify->add_option("--rapidities", rapidities_text, "Rapidities theta (x = e^theta)")->required();
  verify->add_option("--eps", eps_text, "Boundary parameters eps_0,...,eps_n");
  verify->add_option("--tol", verify_tol, "Deviation tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "Report file");

  auto* scan = app.add_subcommand("scan", "Nullspace dimensions over a parameter grid");
  add_common(scan, common);
  add_convention(scan, common);
  std::string axis, grid_text, system;
  std::string scan_x = "1";
  scan->add_option("axis", axis, "eps | theta")->required()->check(CLI::IsMember({"eps", "theta"}));
  scan->add_option("--grid", grid_text, "eps: v1,v2,... per component; theta: a:b:count")->required();
  scan->add_option("--x", scan_x, "Fixed spectral parameter");
  scan->add_option("--eps", eps_text, "Fixed boundary parameters (theta scans)");
  scan->add_option("--system", system, "paper | boundary | bulk")
      ->check(CLI::IsMember({"paper", "boundary", "bulk"}));
  scan->add_option("--out", out_path, "Output file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    const qa_complex q = complex_arg(common.q, "--q");
    const qa_reflection reflection = kConventions.at(common.convention);
    qa_document* raw = nullptr;
    qa_status status = QA_OK;

    if (rep_check->parsed()) {
      status = qa_rep_check(common.n, q, complex_arg(x_text, "--x"), tol, &raw);
    } else if (smatrix->parsed()) {
      qa_smatrix_request req{common.n, q, complex_arg(x1_text, "--x1"), complex_arg(x2_text, "--x2"),
                             dual_left ? 1 : 0, dual_right ? 1 : 0, reflection, common.rel_tol};
      status = qa_smatrix(&req, &raw);
    } else if (kmatrix->parsed()) {
      const auto eps = complex_list_arg(eps_text, "--eps");
      qa_kmatrix_request req{};
      req.n = common.n;
      req.q = q;
      req.x = complex_arg(x_text, "--x");
      req.eps = eps.data();
      req.eps_count = eps.size();
      req.method = method == "paper" ? QA_KMETHOD_EXPLICIT : method == "generic" ? QA_KMETHOD_GENERIC : QA_KMETHOD_CLOSED_FORM;
      if (!agg_text.empty()) {
        req.has_eps_aggregate = 1;
        req.eps_aggregate = complex_arg(agg_text, "--eps-aggregate");
      }
      req.reflection = reflection;
      req.rel_tol = common.rel_tol;
      status = qa_kmatrix(&req, &raw);
    } else if (verify->parsed()) {
      const auto thetas = real_list_arg(rapidities_text, "--rapidities");
      std::vector<qa_complex> eps;
      if (!eps_text.empty()) eps = complex_list_arg(eps_text, "--eps");
      static const std::map<std::string, qa_check> checks = {{"ybe", QA_CHECK_YBE},
                                                             {"re", QA_CHECK_RE},
                                                             {"coideal", QA_CHECK_COIDEAL},
                                                             {"sklyanin", QA_CHECK_SKLYANIN},
                                                             {"b-comm", QA_CHECK_BCOMM}};
      qa_verify_request req{checks.at(check_name), common.n, q, thetas.data(), thetas.size(), eps.data(),
                            eps.size(), reflection, verify_tol, common.rel_tol};
      status = qa_verify(&req, &raw);
    } else if (scan->parsed()) {
      qa_scan_request req{};
      req.n = common.n;
      req.q = q;
      req.x = complex_arg(scan_x, "--x");
      std::vector<qa_complex> eps, values;
      if (!eps_text.empty()) eps = complex_list_arg(eps_text, "--eps");
      req.eps = eps.data();
      req.eps_count = eps.size();
      req.reflection = reflection;
      req.rel_tol = common.rel_tol;
      if (axis == "eps") {
        req.axis = QA_AXIS_EPS;
        values = complex_list_arg(grid_text, "--grid");
        req.values = values.data();
        req.value_count = values.size();
        req.kind = system == "boundary" ? QA_SCAN_BOUNDARY : system == "bulk" ? QA_SCAN_BULK : QA_SCAN_EXPLICIT;
      } else {
        req.axis = QA_AXIS_THETA;
        const auto [from, count] = split_theta_spec(grid_text, req.theta_to);
        req.theta_from = from;
        req.theta_count = count;
        req.kind = system == "boundary" ? QA_SCAN_BOUNDARY : system == "paper" ? QA_SCAN_EXPLICIT : QA_SCAN_BULK;
      }
      status = qa_scan(&req, &raw);
    }

    DocumentPtr doc(raw);
    if (!doc) throw Failure(exit_code(status), qa_last_error());
    const std::string message = status == QA_OK ? "" : qa_last_error();

    if (qa_document_check_count(doc.get()) > 0) {
      print_checks(doc.get(), out, color);
      if (!out_path.empty()) write_document(doc.get(), out_path, out);
    } else {
      write_document(doc.get(), out_path, out);
      if (!out_path.empty()) {
        const long dim = qa_document_dimension(doc.get());
        out << "wrote " << out_path;
        if (dim >= 0) out << " (nullspace dimension " << dim << ')';
        out << '\n';
      }
    }
    if (status != QA_OK) err << "error: " << message << '\n';
    return exit_code(status);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  }
}

}  // namespace qaffine_cli
