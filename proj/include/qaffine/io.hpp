#pragma once

// Complex-number literals and the JSON documents written by the command-line
// tool. Output is deterministic: fixed key order, shortest round-trip decimals.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qaffine/linalg.hpp"
#include "qaffine/report.hpp"

namespace qaffine {

/// Accepts "a+bi", "a-bi", "bi", "i", "a" and the polar form "r@phi".
/// Throws Error(kParse) on malformed input, Error(kNonFinite) on inf/nan.
Complex parse_complex(std::string_view text);
/// Comma-separated list of parse_complex literals.
std::vector<Complex> parse_complex_list(std::string_view text);
/// Comma-separated list of real numbers.
std::vector<double> parse_real_list(std::string_view text);

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kNormalization = "max-modulus-1";

/// Convention tags accepted in documents.
bool is_known_convention(std::string_view convention);

struct DocumentMeta {
  std::string kind;
  std::optional<std::string> method;
  int n = 1;
  Complex q{1.0, 0.0};
  /// Exactly one of x / rapidities is written; x wins when both are set.
  std::vector<Complex> x;
  std::vector<Complex> rapidities;
  std::vector<Complex> eps;
  std::string convention = "paper";
  double tol = kDefaultRelTol;
  std::optional<std::size_t> dimension;
  std::optional<double> residual;
};

struct MatrixDocument {
  DocumentMeta meta;
  ComplexMatrix matrix;
};

struct CheckRecord {
  std::string name;
  double deviation = 0.0;
  Complex lambda{1.0, 0.0};
  double tol = 0.0;
  bool passed = false;
};

CheckRecord to_record(const VerificationReport& report);

struct ReportDocument {
  DocumentMeta meta;
  std::vector<CheckRecord> checks;
};

struct ScanDocument {
  DocumentMeta meta;
  std::string axis;
  std::vector<std::vector<Complex>> grid;
  std::vector<std::size_t> dims;
};

std::string serialize_matrix(const MatrixDocument& doc);
MatrixDocument deserialize_matrix(std::string_view bytes);

std::string serialize_report(const ReportDocument& doc);
ReportDocument deserialize_report(std::string_view bytes);

std::string serialize_scan(const ScanDocument& doc);
ScanDocument deserialize_scan(std::string_view bytes);

/// Reads the "kind" of any document without full validation.
std::string document_kind(std::string_view bytes);

}  // namespace qaffine
