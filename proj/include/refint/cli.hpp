#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace refint::cli {

/// Environment variable naming the directory that relative --out paths resolve against.
inline constexpr const char* kOutputDirEnv = "REFINT_OUTPUT_DIR";

/// Runs one subcommand (trace, table, pattern, scan-alpha, scan-lambda, validate).
/// `args` excludes the program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refint::cli
