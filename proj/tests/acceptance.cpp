// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "tccr/cli.hpp"
#include "tccr/reconstruct.hpp"
#include "tccr/relations.hpp"
#include "tccr/symbolic.hpp"

using namespace tccr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_matching(const VerificationReport& r, const std::string& needle) {
  double worst = 0.0;
  for (const Check& c : r.checks()) {
    if (c.id.find(needle) != std::string::npos) worst = std::max(worst, c.residual);
  }
  return worst;
}

const double kMus[] = {-0.9, -0.5, 0.0, 0.3, 0.7};

Outcome tccr_residual_criterion() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  double worst = 0.0;
  for (double mu : kMus) {
    const VerificationReport r = tccr_residuals(build_fock_tccr(3, mu, 8));
    out.pass = out.pass && r.all_passed() && r.summary().total == 12;
    worst = std::max(worst, r.max_residual());
  }
  const double elapsed = seconds_since(start);
  out.pass = out.pass && worst <= 1e-10 && elapsed <= 60.0;
  out.detail = "max residual " + fmt(worst) + ", " + fmt(elapsed) + " s";
  return out;
}

Outcome pi_residual_criterion() {
  Outcome out;
  double worst = 0.0;
  int families = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int j = 0; j <= d; ++j) {
      for (double phase : {0.0, std::numbers::pi / 3.0, std::numbers::pi}) {
        const VerificationReport r = pi_residuals(build_irrep({d, j, phase, 8, 0.0}));
        out.pass = out.pass && r.all_passed();
        worst = std::max(worst, r.max_residual());
        ++families;
      }
    }
  }
  out.pass = out.pass && worst <= 1e-10;
  out.detail = std::to_string(families) + " families, max residual " + fmt(worst);
  return out;
}

Outcome roundtrip_criterion() {
  const VerificationReport r = roundtrip_check(build_irrep({3, 3, 0.0, 8, 0.0}), 0.5);
  const double a = max_matching(r, "A.generator");
  const double b = max_matching(r, "B.generator");
  Outcome out;
  out.pass = r.all_passed() && r.find("A.generator[3]") && r.find("B.generator[3]") && a <= 1e-8 && b <= 1e-8;
  out.detail = "S^(a~(t)) vs t " + fmt(a) + ", a~(S^(a)) vs a " + fmt(b) + ", relation checks " +
               std::to_string(r.summary().passed) + "/" + std::to_string(r.summary().total);
  return out;
}

Outcome degeneration_criterion() {
  const GeneratorFamily t = build_irrep({3, 3, 0.0, 8, 0.0});
  const TildeResult tilde = tilde_a_family(t, 0.0);
  double tilde_worst = 0.0;
  for (int i = 1; i <= 3; ++i) tilde_worst = std::max(tilde_worst, operator_norm(tilde.family.a(i) - t.t(i)));
  const TccrFamily a = build_fock_tccr(3, 0.0, 8);
  const GeneratorFamily s = hat_s_family(a);
  double hat_worst = 0.0;
  for (int i = 1; i <= 3; ++i) hat_worst = std::max(hat_worst, operator_norm(s.t(i) - a.a(i)));
  Outcome out;
  out.pass = tilde_worst <= 1e-12 && hat_worst <= 1e-12;
  out.detail = "||a~_i - t_i|| " + fmt(tilde_worst) + ", ||S^_i - a_i|| " + fmt(hat_worst);
  return out;
}

Outcome lemma_criterion() {
  const VerificationReport r = verify_lemma_suite(build_irrep({3, 3, 0.0, 8, 0.0}), 0.5);
  int powers_diagonal = 0;
  for (const Check& c : r.checks()) {
    if (c.id.rfind("powers[", 0) == 0 && c.description.find("P_{j-1}") != std::string::npos) ++powers_diagonal;
  }
  Outcome out;
  out.pass = r.all_passed() && r.max_residual() <= 1e-10 && powers_diagonal == 9 && r.find("stage_twist_lower[3,2,1]") &&
             r.find("stage_ccr[3,1]") && r.find("stage_orth[3,1,2]");
  out.detail = std::to_string(r.summary().passed) + "/" + std::to_string(r.summary().total) +
               " instances, max residual " + fmt(r.max_residual());
  return out;
}

Outcome norm_bound_criterion() {
  Outcome out;
  double worst_bound = 0.0;
  double worst_value = 0.0;
  bool monotone = true;
  for (double mu : kMus) {
    const VerificationReport r = norm_bound_check(build_fock_tccr(3, mu, 8));
    out.pass = out.pass && r.all_passed();
    worst_bound = std::max(worst_bound, max_matching(r, "bound"));
    worst_value = std::max(worst_value, max_matching(r, "truncated"));
    double previous = -1.0;
    for (int cap : {4, 6, 8, 10}) {
      const LinearOperator a1 = build_fock_tccr(3, mu, cap).a(1);
      const double norm = operator_norm(a1 * a1.adjoint());
      // mu = 0 gives the constant value 1
      if (previous >= 0.0) monotone = monotone && (mu == 0.0 ? norm >= previous - 1e-12 : norm > previous);
      previous = norm;
    }
  }
  out.pass = out.pass && monotone;
  out.detail = "bound excess " + fmt(worst_bound) + ", truncated-value error " + fmt(worst_value) +
               (monotone ? ", monotone in N" : ", NOT monotone in N");
  return out;
}

Outcome qccr_criterion() {
  Outcome out;
  double isometry = 0.0;
  double rebuild = 0.0;
  for (double q : {-0.5, 0.3, 0.9}) {
    const VerificationReport r = one_mode_polar_check(q, 12);
    out.pass = out.pass && r.all_passed();
    isometry = std::max(isometry, r.find("isometry")->residual);
    rebuild = std::max(rebuild, r.find("reconstruction")->residual);
  }
  out.pass = out.pass && isometry <= 1e-10 && rebuild <= 1e-8;
  out.detail = "S^*S = 1 error " + fmt(isometry) + ", reconstruction error " + fmt(rebuild);
  return out;
}

Outcome faithfulness_criterion() {
  Outcome out;
  double exact = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int j = 0; j < d; ++j) {
      for (double phase : {0.0, std::numbers::pi / 3.0}) {
        const VerificationReport r = psi_collapse_check(d, j, phase, 4);
        out.pass = out.pass && r.all_passed();
        exact = std::max({exact, max_matching(r, "psi["), max_matching(r, "psi_adjoint[")});
      }
    }
  }
  const auto words = sample_words(100, 2, 6, 42);
  const std::vector<IrrepSpec> classes{{2, 0, std::numbers::pi / 3.0, 12, 0.0}, {2, 1, std::numbers::pi / 3.0, 12, 0.0}};
  const VerificationReport dom = norm_domination_sample(words, classes, {2, 2, 0.0, 12, 0.0}, 42);
  const double excess = max_matching(dom, "dominate");
  out.pass = out.pass && exact <= 1e-12 && dom.all_passed() && excess <= 1e-8;
  out.detail = "psi generator error " + fmt(exact) + ", domination excess " + fmt(excess) + " over " +
               std::to_string(words.size()) + " words";
  return out;
}

Outcome symbolic_criterion() {
  using namespace symbolic;
  Outcome out;
  const MuPoly expected = MuPoly(1) + MuPoly::mu() * MuPoly::mu();
  const bool exact = vacuum_expectation(parse_polynomial("a1* a1* a1 a1", 1), 1) == expected;
  double min_eig = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= 2; ++d) {
    for (int level = 0; level <= 4; ++level) {
      const GramMatrix g = gram_matrix(level, d);
      for (double mu : {-0.9, -0.5, -0.1, 0.3, 0.7, 0.9}) min_eig = std::min(min_eig, min_eigenvalue(evaluate(g, mu)));
    }
  }
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> pick_mu(0, 4);
  std::vector<TccrFamily> models;
  for (double mu : kMus) models.push_back(build_fock_tccr(2, mu, 6));
  double bridge = 0.0;
  bool bridge_pass = true;
  for (int k = 0; k < 200; ++k) {
    const NcPolynomial p = random_polynomial(rng, 2, 4);
    const VerificationReport r = eval_and_bridge(p, models[static_cast<std::size_t>(pick_mu(rng))]);
    bridge_pass = bridge_pass && r.all_passed();
    bridge = std::max(bridge, r.max_residual());
  }
  out.pass = exact && min_eig >= -1e-10 && bridge_pass && bridge <= 1e-10;
  out.detail = std::string("<x1*^2 x1^2> ") + (exact ? "= 1 + mu^2" : "WRONG") + ", min Gram eigenvalue " +
               fmt(min_eig) + ", max bridge error " + fmt(bridge) + " over 200";
  return out;
}

Outcome confluence_criterion() {
  using namespace symbolic;
  std::mt19937_64 rng(42);
  int agree = 0;
  for (int k = 0; k < 500; ++k) {
    const int d = 1 + k % 3;
    const NcPolynomial p = random_polynomial(rng, d, 5);
    if (normal_order(p, d, Strategy::LeftmostInnermost) == normal_order(p, d, Strategy::LeftmostOutermost)) ++agree;
  }
  return {agree == 500, std::to_string(agree) + "/500 identical normal forms"};
}

Outcome determinism_criterion() {
  cli::CommandSpec spec;
  spec.subcommand = "demo";
  const std::string first = to_canonical_json(cli::execute_command(spec));
  const std::string second = to_canonical_json(cli::execute_command(spec));
  std::ostringstream sink;
  auto run = [&sink](std::vector<const char*> args) {
    args.insert(args.begin(), "tccr");
    return cli::run(static_cast<int>(args.size()), args.data(), sink);
  };
  const std::string path = (std::filesystem::temp_directory_path() / "tccr_acceptance.json").string();
  const int ok = run({"qccr", "--cap", "6", "--out", path.c_str()});
  const int failing = run({"qccr", "--cap", "6", "--tol", "1e-300", "--out", path.c_str()});
  const int usage = run({"verify", "--mu", "1.5"});
  std::filesystem::remove(path);
  Outcome out;
  out.pass = first == second && ok == 0 && failing == 1 && usage == 2;
  out.detail = std::string(first == second ? "demo JSON byte-identical" : "demo JSON DIFFERS") + " (" +
               std::to_string(first.size()) + " bytes), exit codes " + std::to_string(ok) + "/" +
               std::to_string(failing) + "/" + std::to_string(usage);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"twisted CCR residuals, d=3, N=8, five mu values", tccr_residual_criterion},
      {"partial-isometry residuals, every class for d <= 3", pi_residual_criterion},
      {"roundtrip in both directions, d=3, mu=0.5, N=8", roundtrip_criterion},
      {"mu=0 degeneration of both constructions", degeneration_criterion},
      {"lemma suite, d=3, mu=0.5, N=8", lemma_criterion},
      {"norm bound, truncated value, monotone in N", norm_bound_criterion},
      {"one-mode q-CCR polar identity, N=12", qccr_criterion},
      {"collapse map and norm domination", faithfulness_criterion},
      {"symbolic oracle: exact moment, Gram positivity, bridge", symbolic_criterion},
      {"confluence of two rewriting strategies", confluence_criterion},
      {"determinism and exit codes", determinism_criterion},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
