#pragma once

// Command-line front end. Everything except argument parsing lives here so the
// tests can drive subcommands directly.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tccr/report.hpp"

namespace tccr::cli {

inline const std::vector<std::string> kSubcommands{"verify", "roundtrip", "irreps", "gram",
                                                   "faithfulness", "qccr", "demo"};

struct CommandSpec {
  std::string subcommand = "verify";
  int d = 2;
  double mu = 0.5;
  double q = 0.3;
  int cap = 8;
  // Defaults to d (the Fock class).
  std::optional<int> class_j;
  double phase = 0.0;
  // Replaces every check tolerance when set.
  std::optional<double> tol;
  std::uint64_t seed = 42;
  int words = 100;
  int level = 2;
  std::string out;  // empty: stdout
  std::string format = "json";
  int jobs = 0;  // 0: OpenMP default

  int effective_class() const { return class_j.value_or(d); }
};

enum ExitCode : int { kAllPassed = 0, kChecksFailed = 1, kUsageError = 2 };

// Throws ParameterError on out-of-range values.
void validate(const CommandSpec& spec);

VerificationReport execute_command(const CommandSpec& spec);

std::string render(const VerificationReport& report, const std::string& format);

// Writes the rendered report to `out` (stdout when empty). Returns the exit
// code for the report, or kUsageError when the file cannot be written.
int emit_report(const VerificationReport& report, const std::string& format, const std::string& out,
                std::ostream& err);

// Full entry point: parse, validate, execute, emit.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace tccr::cli
