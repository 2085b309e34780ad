#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qaffine_cli {

enum ExitCode { kSuccess = 0, kVerificationFailed = 1, kInvalidInput = 2, kDegenerate = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. `color` enables ANSI colouring of PASS/FAIL.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace qaffine_cli
