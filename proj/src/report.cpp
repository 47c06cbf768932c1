#include "tccr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tccr/errors.hpp"

namespace tccr {

Check make_check(std::string id, std::string description, double residual, double tolerance) {
  const bool pass = std::isfinite(residual) && residual <= tolerance;
  return Check{std::move(id), std::move(description), residual, tolerance, pass};
}

void VerificationReport::add(Check check) { checks_.push_back(std::move(check)); }

void VerificationReport::add(std::string id, std::string description, double residual, double tolerance) {
  checks_.push_back(make_check(std::move(id), std::move(description), residual, tolerance));
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    if (!prefix.empty()) c.id = prefix + c.id;
    checks_.push_back(std::move(c));
  }
}

Summary VerificationReport::summary() const {
  Summary s;
  s.total = checks_.size();
  s.passed = static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; }));
  return s;
}

bool VerificationReport::all_passed() const {
  const Summary s = summary();
  return s.passed == s.total;
}

double VerificationReport::max_residual() const {
  double out = 0.0;
  for (const Check& c : checks_) out = std::max(out, c.residual);
  return out;
}

const Check* VerificationReport::find(const std::string& id) const {
  for (const Check& c : checks_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  std::string out(buf);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string format_param(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else {
          return quote(x);
        }
      },
      v);
}

double parse_number(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

std::string to_canonical_json(const VerificationReport& report) {
  std::ostringstream out;
  out << "{\n  \"checks\": [";
  const auto& checks = report.checks();
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const Check& c = checks[k];
    out << (k == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"description\": " << quote(c.description) << ",\n";
    out << "      \"id\": " << quote(c.id) << ",\n";
    out << "      \"pass\": " << (c.pass ? "true" : "false") << ",\n";
    out << "      \"residual\": " << format_double(c.residual) << ",\n";
    out << "      \"tolerance\": " << format_double(c.tolerance) << "\n";
    out << "    }";
  }
  out << (checks.empty() ? "],\n" : "\n  ],\n");
  out << "  \"command\": " << quote(report.command()) << ",\n";
  out << "  \"params\": {";
  bool first = true;
  for (const auto& [key, value] : report.params()) {
    out << (first ? "\n" : ",\n") << "    " << quote(key) << ": " << format_param(value);
    first = false;
  }
  out << (first ? "},\n" : "\n  },\n");
  const Summary s = report.summary();
  out << "  \"summary\": {\n    \"passed\": " << s.passed << ",\n    \"total\": " << s.total << "\n  }\n}\n";
  return out.str();
}

VerificationReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what(), 0);
  }
  VerificationReport report(j.at("command").get<std::string>());
  for (const auto& [key, value] : j.at("params").items()) {
    if (value.is_boolean()) {
      report.set_param(key, value.get<bool>());
    } else if (value.is_number_integer()) {
      report.set_param(key, value.get<std::int64_t>());
    } else if (value.is_number() || value.is_null()) {
      report.set_param(key, parse_number(value));
    } else {
      report.set_param(key, value.get<std::string>());
    }
  }
  for (const auto& c : j.at("checks")) {
    report.add(c.at("id").get<std::string>(), c.at("description").get<std::string>(), parse_number(c.at("residual")),
               parse_number(c.at("tolerance")));
  }
  const auto& summary = j.at("summary");
  const Summary s = report.summary();
  if (summary.at("total").get<std::size_t>() != s.total || summary.at("passed").get<std::size_t>() != s.passed) {
    throw ParseError("report JSON: summary does not match the checks", 0);
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "id,description,residual,tolerance,pass\n";
  for (const Check& c : report.checks()) {
    out << csv_field(c.id) << ',' << csv_field(c.description) << ',' << format_double(c.residual) << ','
        << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string to_markdown(const VerificationReport& report) {
  std::ostringstream out;
  out << "# " << report.command() << "\n\n";
  if (!report.params().empty()) {
    out << "| parameter | value |\n|---|---|\n";
    for (const auto& [key, value] : report.params()) {
      out << "| " << key << " | " << format_param(value) << " |\n";
    }
    out << "\n";
  }
  out << "| id | description | residual | tolerance | pass |\n|---|---|---|---|---|\n";
  for (const Check& c : report.checks()) {
    out << "| " << c.id << " | " << c.description << " | " << format_double(c.residual) << " | "
        << format_double(c.tolerance) << " | " << (c.pass ? "yes" : "**NO**") << " |\n";
  }
  const Summary s = report.summary();
  out << "\n" << s.passed << " of " << s.total << " checks passed.\n";
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<Check> run_checks(const std::vector<CheckTask>& tasks, Execution execution) {
  std::vector<Check> out(tasks.size());
  auto evaluate = [&](std::size_t k) {
    const CheckTask& task = tasks[k];
    try {
      out[k] = make_check(task.id, task.description, task.residual(), task.tolerance);
    } catch (const std::exception& e) {
      out[k] = make_check(task.id, task.description + " [error: " + e.what() + "]",
                          std::numeric_limits<double>::infinity(), task.tolerance);
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) evaluate(static_cast<std::size_t>(k));
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k) evaluate(static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace tccr
