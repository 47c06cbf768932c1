#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tccr/cli.hpp"
#include "tccr/errors.hpp"
#include "tccr/report.hpp"

using namespace tccr;

namespace {

int run(std::vector<const char*> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "tccr");
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(args.size()), args.data(), err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validation") {
    cli::CommandSpec spec;
    CHECK_NOTHROW(cli::validate(spec));
    spec.mu = -1.0;
    CHECK_THROWS_AS(cli::validate(spec), ParameterError);
    spec = {};
    spec.cap = 1;
    CHECK_THROWS_AS(cli::validate(spec), ParameterError);
    spec = {};
    spec.class_j = 3;
    CHECK_THROWS_AS(cli::validate(spec), ParameterError);
    spec = {};
    spec.subcommand = "nope";
    CHECK_THROWS_AS(cli::validate(spec), ParameterError);
    spec = {};
    spec.q = 1.0;
    CHECK_THROWS_AS(cli::validate(spec), ParameterError);
  }

  TEST_CASE("every report carries the full parameter set") {
    cli::CommandSpec spec;
    spec.subcommand = "qccr";
    spec.cap = 5;
    const VerificationReport r = cli::execute_command(spec);
    for (const char* key : {"d", "mu", "q", "cap", "class_j", "phase", "seed", "words", "level"}) {
      CHECK_MESSAGE(r.params().count(key) == 1, key);
    }
    CHECK(r.command() == "qccr");
    CHECK(r.params().count("tol") == 0);
  }

  TEST_CASE("gram prints exact entries") {
    cli::CommandSpec spec;
    spec.subcommand = "gram";
    spec.d = 1;
    spec.level = 2;
    spec.words = 5;
    const VerificationReport r = cli::execute_command(spec);
    CHECK(std::get<std::string>(r.params().at("gram")) == "[[1, 0, 0], [0, 1, 0], [0, 0, 1 + mu^2]]");
    CHECK(std::get<std::string>(r.params().at("gram_basis")) == "[1, a1, a1 a1]");
    CHECK(r.all_passed());
  }

  TEST_CASE("verify and roundtrip examples") {
    cli::CommandSpec spec;
    spec.subcommand = "verify";
    spec.d = 3;
    spec.mu = 0.7;
    spec.cap = 6;
    CHECK(cli::execute_command(spec).all_passed());
    spec = {};
    spec.subcommand = "roundtrip";
    spec.mu = 0.0;
    spec.cap = 6;
    const VerificationReport r = cli::execute_command(spec);
    CHECK(r.all_passed());
    CHECK(r.max_residual() <= 1e-12);
  }

  TEST_CASE("tolerance override applies to every check") {
    cli::CommandSpec spec;
    spec.subcommand = "irreps";
    spec.d = 1;
    spec.cap = 3;
    spec.tol = 0.25;
    const VerificationReport r = cli::execute_command(spec);
    for (const Check& c : r.checks()) CHECK(c.tolerance == 0.25);
    CHECK(std::get<double>(r.params().at("tol")) == 0.25);
  }

  TEST_CASE("exit codes") {
    const auto out = temp_path("tccr_cli_test.json");
    CHECK(run({"qccr", "--cap", "5", "--out", out.c_str()}) == 0);
    CHECK(run({"qccr", "--cap", "5", "--tol", "1e-300", "--out", out.c_str()}) == 1);
    std::string err;
    CHECK(run({"verify", "--mu", "1.2"}, &err) == 2);
    CHECK(err.find("mu") != std::string::npos);
    CHECK(run({"verify", "--bogus"}) == 2);
    CHECK(run({"verify", "--format", "xml"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"qccr", "--out", "/nonexistent-dir/x.json"}, &err) == 2);
    CHECK(err.find("cannot write") != std::string::npos);
    CHECK(run({"gram", "--d", "4"}) == 2);
    std::filesystem::remove(out);
  }

  TEST_CASE("csv output header") {
    const auto out = temp_path("tccr_cli_test.csv");
    CHECK(run({"qccr", "--cap", "4", "--format", "csv", "--out", out.c_str()}) == 0);
    CHECK(read_file(out).rfind("id,description,residual,tolerance,pass\n", 0) == 0);
    std::filesystem::remove(out);
  }

  TEST_CASE("golden report for the one-generator shift") {
    const auto out = temp_path("tccr_cli_golden.json");
    CHECK(run({"irreps", "--d", "1", "--cap", "3", "--out", out.c_str()}) == 0);
    CHECK(read_file(out) == read_file(std::filesystem::path(TCCR_GOLDEN_DIR) / "irreps_d1_cap3.json"));
    std::filesystem::remove(out);
  }

  TEST_CASE("json output does not depend on the worker count") {
    cli::CommandSpec spec;
    spec.subcommand = "roundtrip";
    spec.cap = 5;
    spec.jobs = 1;
    const std::string one = to_canonical_json(cli::execute_command(spec));
    spec.jobs = 4;
    CHECK(to_canonical_json(cli::execute_command(spec)) == one);
  }
}
