#pragma once

// Verification reports: named residual checks with tolerances, plus the
// canonical JSON, CSV and Markdown encodings used by the CLI.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tccr {

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

struct Check {
  std::string id;
  std::string description;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool operator==(const Check&) const = default;
};

Check make_check(std::string id, std::string description, double residual, double tolerance);

struct Summary {
  std::size_t total = 0;
  std::size_t passed = 0;
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  const std::map<std::string, ParamValue>& params() const { return params_; }
  const std::vector<Check>& checks() const { return checks_; }

  void set_param(const std::string& key, ParamValue value) { params_[key] = std::move(value); }
  void add(Check check);
  void add(std::string id, std::string description, double residual, double tolerance);
  // Appends every check of `other`, prefixing ids with `prefix` when non-empty.
  void append(const VerificationReport& other, const std::string& prefix = "");

  Summary summary() const;
  bool all_passed() const;
  double max_residual() const;
  const Check* find(const std::string& id) const;

  bool operator==(const VerificationReport&) const = default;

 private:
  std::string command_;
  std::map<std::string, ParamValue> params_;
  std::vector<Check> checks_;
};

// Canonical JSON: sorted keys, two-space indent, floats as %.15g.
std::string to_canonical_json(const VerificationReport& report);
// Parses canonical (or any equivalent) JSON. Pass flags are recomputed from
// residual and tolerance; a summary inconsistent with the checks is an error.
VerificationReport report_from_json(const std::string& text);

std::string to_csv(const VerificationReport& report);
std::string to_markdown(const VerificationReport& report);

std::string format_double(double value);

enum class Execution { Serial, Parallel };

// Evaluates independent check tasks, in parallel when requested. Results are
// stored in task order, so the output does not depend on thread count. A task
// that throws is recorded as a failed check carrying the error message.
struct CheckTask {
  std::string id;
  std::string description;
  double tolerance;
  std::function<double()> residual;
};

std::vector<Check> run_checks(const std::vector<CheckTask>& tasks, Execution execution = Execution::Parallel);

}  // namespace tccr
