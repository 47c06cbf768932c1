#include "tccr/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "tccr/errors.hpp"
#include "tccr/reconstruct.hpp"
#include "tccr/relations.hpp"
#include "tccr/representations.hpp"
#include "tccr/symbolic.hpp"

namespace tccr::cli {

namespace {

constexpr int kMaxSampledWordLength = 6;
constexpr int kMaxPsiCap = 6;
constexpr int kMaxBridgeDegree = 4;
constexpr double kGramMus[] = {-0.9, -0.5, -0.1, 0.3, 0.7, 0.9};

std::string phase_label(double phase) { return "phi=" + format_double(phase); }

std::vector<double> class_phases(double phase) {
  std::vector<double> out{0.0, std::numbers::pi / 3.0, std::numbers::pi};
  if (std::find(out.begin(), out.end(), phase) == out.end()) out.push_back(phase);
  return out;
}

void set_params(VerificationReport& report, const CommandSpec& spec) {
  report.set_param("d", static_cast<std::int64_t>(spec.d));
  report.set_param("mu", spec.mu);
  report.set_param("q", spec.q);
  report.set_param("cap", static_cast<std::int64_t>(spec.cap));
  report.set_param("class_j", static_cast<std::int64_t>(spec.effective_class()));
  report.set_param("phase", spec.phase);
  report.set_param("seed", static_cast<std::int64_t>(spec.seed));
  report.set_param("words", static_cast<std::int64_t>(spec.words));
  report.set_param("level", static_cast<std::int64_t>(spec.level));
  if (spec.tol) report.set_param("tol", *spec.tol);
}

IrrepSpec irrep_of(const CommandSpec& spec) {
  return IrrepSpec{spec.d, spec.effective_class(), spec.phase, spec.cap, spec.mu};
}

VerificationReport run_verify(const CommandSpec& spec) {
  VerificationReport report("verify");
  const TccrFamily a = build_fock_tccr(spec.d, spec.mu, spec.cap);
  report.append(tccr_residuals(a));
  report.append(pi_residuals(build_irrep(irrep_of(spec))));
  report.append(norm_bound_check(a, true), "norm.");
  return report;
}

VerificationReport run_roundtrip(const CommandSpec& spec) {
  VerificationReport report("roundtrip");
  const GeneratorFamily t = build_irrep(irrep_of(spec));
  report.append(roundtrip_check(t, spec.mu), "roundtrip.");
  report.append(verify_lemma_suite(t, spec.mu), "lemma.");
  if (t.spec->is_fock()) report.append(polar_structure_checks(build_fock_tccr(spec.d, spec.mu, spec.cap)), "polar.");
  return report;
}

VerificationReport run_irreps(const CommandSpec& spec) {
  VerificationReport report("irreps");
  for (int j = 0; j <= spec.d; ++j) {
    const std::vector<double> phases = j == spec.d ? std::vector<double>{0.0} : class_phases(spec.phase);
    for (double phase : phases) {
      const GeneratorFamily t = build_irrep({spec.d, j, phase, spec.cap, 0.0});
      std::string prefix = "j=" + std::to_string(j);
      if (j < spec.d) prefix += "," + phase_label(phase);
      report.append(pi_residuals(t), prefix + ".");
    }
  }
  return report;
}

std::string gram_text(const symbolic::GramMatrix& gram) {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < gram.size(); ++r) {
    if (r) out << ", ";
    out << '[';
    for (std::size_t c = 0; c < gram[r].size(); ++c) {
      if (c) out << ", ";
      out << symbolic::to_string(gram[r][c]);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

VerificationReport run_gram(const CommandSpec& spec) {
  VerificationReport report("gram");
  const symbolic::GramMatrix gram = symbolic::gram_matrix(spec.level, spec.d);
  std::string basis;
  for (const symbolic::Word& w : symbolic::gram_basis(spec.level, spec.d)) {
    if (!basis.empty()) basis += ", ";
    basis += w.empty() ? "1" : symbolic::to_string(w);
  }
  report.set_param("gram_basis", "[" + basis + "]");
  report.set_param("gram", gram_text(gram));
  for (double mu : kGramMus) {
    const double lambda = symbolic::min_eigenvalue(symbolic::evaluate(gram, mu));
    report.add("positive[mu=" + format_double(mu) + "]",
               "Gram matrix is positive semidefinite (min eigenvalue " + format_double(lambda) + ")",
               std::max(0.0, -lambda), kModelTolerance);
  }
  const TccrFamily family = build_fock_tccr(spec.d, spec.mu, spec.cap);
  std::mt19937_64 rng(spec.seed);
  const int degree = std::min(kMaxBridgeDegree, spec.cap);
  for (int k = 0; k < spec.words; ++k) {
    const symbolic::NcPolynomial p = symbolic::random_polynomial(rng, spec.d, degree);
    report.append(symbolic::eval_and_bridge(p, family), "bridge[" + std::to_string(k) + "].");
  }
  return report;
}

VerificationReport run_faithfulness(const CommandSpec& spec) {
  VerificationReport report("faithfulness");
  const int psi_cap = std::min(spec.cap, kMaxPsiCap);
  report.set_param("psi_cap", static_cast<std::int64_t>(psi_cap));
  for (int j = 0; j < spec.d; ++j) {
    report.append(psi_collapse_check(spec.d, j, spec.phase, psi_cap, spec.seed),
                  "psi[j=" + std::to_string(j) + "].");
  }
  const int max_length = std::min(kMaxSampledWordLength, spec.cap);
  report.set_param("max_word_length", static_cast<std::int64_t>(max_length));
  const auto words = sample_words(static_cast<std::size_t>(spec.words), spec.d, max_length, spec.seed);
  std::vector<IrrepSpec> classes;
  for (int j = 0; j < spec.d; ++j) classes.push_back({spec.d, j, spec.phase, spec.cap, 0.0});
  report.append(norm_domination_sample(words, classes, {spec.d, spec.d, 0.0, spec.cap, 0.0}, spec.seed));
  return report;
}

VerificationReport run_qccr(const CommandSpec& spec) {
  VerificationReport report("qccr");
  report.append(one_mode_polar_check(spec.q, spec.cap));
  return report;
}

CommandSpec demo_spec() {
  CommandSpec spec;
  spec.subcommand = "demo";
  spec.d = 2;
  spec.mu = 0.5;
  spec.q = 0.3;
  spec.cap = 8;
  spec.class_j = 2;
  spec.phase = std::numbers::pi / 3.0;
  spec.seed = 42;
  spec.words = 20;
  spec.level = 2;
  return spec;
}

VerificationReport run_demo(const CommandSpec& requested) {
  CommandSpec spec = demo_spec();
  spec.tol = requested.tol;
  VerificationReport report("demo");
  set_params(report, spec);
  report.append(run_verify(spec), "verify.");
  report.append(run_roundtrip(spec), "roundtrip.");
  CommandSpec nonfock = spec;
  nonfock.class_j = 1;
  report.append(roundtrip_check(build_irrep(irrep_of(nonfock)), spec.mu), "roundtrip.j=1.");
  report.append(run_irreps(spec), "irreps.");
  report.append(run_gram(spec), "gram.");
  report.append(run_faithfulness(spec), "faithfulness.");
  report.append(run_qccr(spec), "qccr.");
  return report;
}

VerificationReport with_tolerance(const VerificationReport& report, double tol) {
  VerificationReport out(report.command());
  for (const auto& [k, v] : report.params()) out.set_param(k, v);
  for (const Check& c : report.checks()) out.add(c.id, c.description, c.residual, tol);
  return out;
}

}  // namespace

void validate(const CommandSpec& spec) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), spec.subcommand) == kSubcommands.end()) {
    throw ParameterError("unknown subcommand '" + spec.subcommand + "'");
  }
  if (spec.d < 1) throw ParameterError("--d must be >= 1");
  if (!(std::abs(spec.mu) < 1.0)) throw ParameterError("--mu must satisfy |mu| < 1");
  if (!(std::abs(spec.q) < 1.0)) throw ParameterError("--q must satisfy |q| < 1");
  if (spec.cap < 2) throw ParameterError("--cap must be >= 2");
  const int j = spec.effective_class();
  if (j < 0 || j > spec.d) throw ParameterError("--class-j must lie in 0..d");
  if (!std::isfinite(spec.phase)) throw ParameterError("--phase must be finite");
  if (spec.tol && !(*spec.tol > 0.0)) throw ParameterError("--tol must be positive");
  if (spec.words < 1) throw ParameterError("--words must be >= 1");
  if (spec.level < 0) throw ParameterError("--level must be >= 0");
  if (spec.jobs < 0) throw ParameterError("--jobs must be >= 0");
  if (spec.format != "json" && spec.format != "csv" && spec.format != "md") {
    throw ParameterError("--format must be json, csv or md");
  }
}

VerificationReport execute_command(const CommandSpec& spec) {
  validate(spec);
  if (spec.jobs > 0) omp_set_num_threads(spec.jobs);
  if (spec.subcommand == "demo") {
    VerificationReport report = run_demo(spec);
    return spec.tol ? with_tolerance(report, *spec.tol) : report;
  }
  VerificationReport report;
  if (spec.subcommand == "verify") {
    report = run_verify(spec);
  } else if (spec.subcommand == "roundtrip") {
    report = run_roundtrip(spec);
  } else if (spec.subcommand == "irreps") {
    report = run_irreps(spec);
  } else if (spec.subcommand == "gram") {
    report = run_gram(spec);
  } else if (spec.subcommand == "faithfulness") {
    report = run_faithfulness(spec);
  } else {
    report = run_qccr(spec);
  }
  set_params(report, spec);
  return spec.tol ? with_tolerance(report, *spec.tol) : report;
}

std::string render(const VerificationReport& report, const std::string& format) {
  if (format == "json") return to_canonical_json(report);
  if (format == "csv") return to_csv(report);
  if (format == "md") return to_markdown(report);
  throw ParameterError("unknown format '" + format + "'");
}

int emit_report(const VerificationReport& report, const std::string& format, const std::string& out,
                std::ostream& err) {
  const std::string text = render(report, format);
  if (out.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (file) file << text;
    if (!file || !file.flush()) {
      err << "error: cannot write report to '" << out << "'\n";
      return kUsageError;
    }
  }
  return report.all_passed() ? kAllPassed : kChecksFailed;
}

int run(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Truncated Fock space checks for the twisted canonical commutation relations"};
  app.require_subcommand(1);
  CommandSpec spec;
  int class_j = -1;
  std::uint64_t seed = spec.seed;
  double tol = 0.0;

  const std::vector<std::pair<std::string, std::string>> help{
      {"verify", "relation residuals of the Fock family and a partial-isometry class, plus the norm bound"},
      {"roundtrip", "a~ and S^ constructions in both directions and the lemma suite"},
      {"irreps", "partial-isometry relations for every class j = 0..d"},
      {"gram", "exact Gram matrix of vacuum expectations, positivity and model bridge"},
      {"faithfulness", "collapse map onto each class and sampled norm domination"},
      {"qccr", "one-mode q-CCR polar decomposition identity"},
      {"demo", "fixed small campaign (d=2, mu=0.5, cap=8) touching every module"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, description] : help) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--d", spec.d, "number of generators")->capture_default_str();
    sub->add_option("--mu", spec.mu, "deformation parameter, |mu| < 1")->capture_default_str();
    sub->add_option("--q", spec.q, "q-CCR parameter, |q| < 1")->capture_default_str();
    sub->add_option("--cap", spec.cap, "per-slot occupation cap N")->capture_default_str();
    sub->add_option("--class-j", class_j, "irreducible class j in 0..d (default d, the Fock class)");
    sub->add_option("--phase", spec.phase, "phase of t_{j+1} in radians")->capture_default_str();
    sub->add_option("--tol", tol, "override every check tolerance");
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("--words", spec.words, "number of sampled words or polynomials")->capture_default_str();
    sub->add_option("--level", spec.level, "Gram matrix word length")->capture_default_str();
    sub->add_option("--out", spec.out, "output path (default stdout)");
    sub->add_option("--format", spec.format, "json, csv or md")
        ->check(CLI::IsMember({"json", "csv", "md"}))
        ->capture_default_str();
    sub->add_option("--jobs", spec.jobs, "worker threads (0: default)")->capture_default_str();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    const int code = app.exit(e, out, err);
    std::cout << out.str();
    return code == 0 ? kAllPassed : kUsageError;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    spec.subcommand = sub->get_name();
    if (sub->count("--class-j")) spec.class_j = class_j;
    if (sub->count("--tol")) spec.tol = tol;
  }
  spec.seed = seed;

  VerificationReport report;
  try {
    report = execute_command(spec);
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapacityError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const TruncationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kChecksFailed;
  }
  return emit_report(report, spec.format, spec.out, err);
}

}  // namespace tccr::cli
