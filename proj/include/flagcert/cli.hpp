#ifndef FLAGCERT_CLI_HPP
#define FLAGCERT_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flagcert/rounding.hpp"

namespace flagcert {

struct PipelineConfig {
  std::filesystem::path workdir = ".";
  std::filesystem::path solver_path;  // empty: resolve_solver's search
  RoundingConfig rounding;
  bool emit_tables = false;

  // Throws std::invalid_argument.
  void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// args[0] is the program name. Normal output goes to `out`, diagnostics to
// `err`.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagcert

#endif  // FLAGCERT_CLI_HPP
