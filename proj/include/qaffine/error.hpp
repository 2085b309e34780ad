#pragma once

#include <stdexcept>
#include <string>

namespace qaffine {

enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerate,
  kParse,
  kVersion,
  kShape,
  kNonFinite,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qaffine
