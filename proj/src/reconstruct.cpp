#include "tccr/reconstruct.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tccr/relations.hpp"

namespace tccr {

namespace {

constexpr double kLemmaTolerance = 1e-10;
constexpr int kMaxSeriesTerms = 100000;

// Degree bookkeeping for core residuals: generator letters count 1, the
// quadratic objects P_j and T_i count 2.
constexpr int kLetter = 1;
constexpr int kQuadratic = 2;

std::string idx(std::initializer_list<int> values) {
  std::ostringstream out;
  out << '[';
  bool first = true;
  for (int v : values) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  out << ']';
  return out.str();
}

void require_pi(const GeneratorFamily& t) {
  const VerificationReport pre = pi_residuals(t, kPreconditionTolerance);
  if (!pre.all_passed()) {
    throw PreconditionError("input family violates the partial-isometry relations beyond " +
                            format_double(kPreconditionTolerance) + ":\n" + to_markdown(pre));
  }
}

void require_tccr(const TccrFamily& a) {
  const VerificationReport pre = tccr_residuals(a, kPreconditionTolerance);
  if (!pre.all_passed()) {
    throw PreconditionError("input family violates the twisted CCR beyond " + format_double(kPreconditionTolerance) +
                            ":\n" + to_markdown(pre));
  }
}

ReconstructionTrace build_trace(const GeneratorFamily& t, double mu) {
  const int d = t.d();
  ReconstructionTrace trace;
  trace.defects.push_back(LinearOperator::identity(t.basis));
  for (int j = 1; j <= d; ++j) {
    trace.defects.push_back(trace.defects.back() - t.t(j) * t.t(j).adjoint());
  }
  for (int i = 1; i <= d; ++i) {
    const LinearOperator& ti = t.t(i);
    // sum_{n>=1} mu^{2(n-1)} t^n t^{*n} = sum_{n>=0} mu^{2n} t^n (t t^*) t^{*n}
    const LinearOperator square = conjugation_series(ti, ti * ti.adjoint(), mu * mu);
    trace.positive_parts.push_back(psd_sqrt(square));
    LinearOperator stage = trace.positive_parts.back() * ti;
    trace.stages.emplace(std::make_pair(i, i), stage);
    for (int j = i - 1; j >= 1; --j) {
      stage = conjugation_series(t.t(j), stage, mu);
      trace.stages.emplace(std::make_pair(i, j), stage);
    }
  }
  return trace;
}

double failed_residual() { return std::numeric_limits<double>::infinity(); }

}  // namespace

LinearOperator conjugation_series(const LinearOperator& t, const LinearOperator& x, double c) {
  LinearOperator sum = x;
  LinearOperator term = x;
  const LinearOperator t_adj = t.adjoint();
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    term = Complex(c) * (t * term * t_adj);
    const double size = term.matrix().norm();
    if (size == 0.0) return sum;
    sum += term;
    if (size <= 1e-15 * sum.matrix().norm()) return sum;
  }
  throw NumericError("conjugation series did not converge");
}

GeneratorFamily hat_s_family(const TccrFamily& a, double rank_tol) {
  require_tccr(a);
  GeneratorFamily out{a.basis, {}, std::nullopt};
  LinearOperator complement = LinearOperator::identity(a.basis);
  for (int i = 1; i <= a.d(); ++i) {
    const LinearOperator s = polar_left(a.a(i), rank_tol).isometric_part;
    out.ops.push_back(complement * s);
    complement -= out.ops.back() * out.ops.back().adjoint();
  }
  return out;
}

TildeResult tilde_a_family(const GeneratorFamily& t, double mu) {
  if (!(std::abs(mu) < 1.0)) throw ParameterError("tilde_a_family: |mu| must be < 1");
  require_pi(t);
  TildeResult result{TccrFamily{t.basis, {}, mu}, build_trace(t, mu)};
  for (int i = 1; i <= t.d(); ++i) result.family.ops.push_back(result.trace.stage(i, 1));
  return result;
}

VerificationReport verify_lemma_suite(const GeneratorFamily& t, double mu, Execution execution) {
  const TildeResult built = tilde_a_family(t, mu);
  const ReconstructionTrace& tr = built.trace;
  const int d = t.d();
  const Complex m(mu);
  const Complex m2(mu * mu);
  std::vector<CheckTask> tasks;
  auto add = [&tasks](std::string id, std::string description, std::function<double()> f) {
    tasks.push_back({std::move(id), std::move(description), kLemmaTolerance, std::move(f)});
  };
  auto a = [&tr](int i, int j) -> const LinearOperator& { return tr.stage(i, j); };
  auto as = [&tr](int i, int j) { return tr.stage(i, j).adjoint(); };
  auto tt = [&t](int i) -> const LinearOperator& { return t.t(i); };
  auto ts = [&t](int i) { return t.t(i).adjoint(); };

  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j < i; ++j) {
      add("peel" + idx({i, j}), "P_j a_i^(j) = a_i^(j+1)", [&, i, j] {
        return core_residual(tr.P(j) * a(i, j), a(i, j + 1), kQuadratic + kLetter);
      });
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j < i; ++j) {
      for (int k = 1; k <= j; ++k) {
        add("peel_absorb" + idx({k, i, j}), "P_k a_i^(j+1) = a_i^(j+1)", [&, i, j, k] {
          return core_residual(tr.P(k) * a(i, j + 1), a(i, j + 1), kQuadratic + kLetter);
        });
        add("orth_left" + idx({k, i, j}), "t_k^* a_i^(j+1) = 0",
            [&, i, j, k] { return core_norm(ts(k) * a(i, j + 1), 2 * kLetter); });
        add("orth_right" + idx({k, i, j}), "a_i^(j+1) t_k = 0",
            [&, i, j, k] { return core_norm(a(i, j + 1) * tt(k), 2 * kLetter); });
        add("orth_left_adj" + idx({k, i, j}), "t_k^* a_i^(j+1)^* = 0",
            [&, i, j, k] { return core_norm(ts(k) * as(i, j + 1), 2 * kLetter); });
        add("orth_right_adj" + idx({k, i, j}), "a_i^(j+1)^* t_k = 0",
            [&, i, j, k] { return core_norm(as(i, j + 1) * tt(k), 2 * kLetter); });
      }
    }
  }
  for (int j = 1; j <= d; ++j) {
    for (int n = 1; n <= 3; ++n) {
      for (int p = 1; p <= 3; ++p) {
        std::string rhs = n > p ? "t_j^{*(n-m)}" : (n == p ? "P_{j-1}" : "t_j^{m-n}");
        add("powers" + idx({j, n, p}), "t_j^{*n} t_j^m = " + rhs, [&, j, n, p] {
          const LinearOperator lhs = power(ts(j), n) * power(tt(j), p);
          const LinearOperator expected = n > p ? power(ts(j), n - p) : (n == p ? tr.P(j - 1) : power(tt(j), p - n));
          return core_residual(lhs, expected, (n + p) * kLetter);
        });
      }
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= i; ++j) {
      add("stage_ccr" + idx({i, j}),
          "a_i^(j)* a_i^(j) = P_{j-1} + mu^2 a_i^(j) a_i^(j)* - (1-mu^2) sum_{j<=k<i} a_k^(j) a_k^(j)*",
          [&, i, j, m2] {
            LinearOperator rhs = tr.P(j - 1) + m2 * (a(i, j) * as(i, j));
            for (int k = j; k < i; ++k) rhs -= (Complex(1.0) - m2) * (a(k, j) * as(k, j));
            return core_residual(as(i, j) * a(i, j), rhs, std::max(2 * kLetter, kQuadratic));
          });
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j < i; ++j) {
      for (int k = j + 1; k <= i; ++k) {
        add("stage_orth" + idx({i, j, k}), "a_i^(k)* a_j^(j) = 0",
            [&, i, j, k] { return core_norm(as(i, k) * a(j, j), 2 * kLetter); });
      }
      add("stage_twist" + idx({i, j}), "a_i^(j)* a_j^(j) = mu a_j^(j) a_i^(j)*",
          [&, i, j, m] { return core_residual(as(i, j) * a(j, j), m * (a(j, j) * as(i, j)), 2 * kLetter); });
      add("stage_twist.commute" + idx({i, j}), "a_i^(j)* T_j^2 = T_j^2 a_i^(j)*", [&, i, j] {
        const LinearOperator t2 = tr.T(j) * tr.T(j);
        return core_residual(as(i, j) * t2, t2 * as(i, j), kLetter + kQuadratic);
      });
      add("stage_twist.shift" + idx({i, j}), "a_i^(j)* t_j = mu t_j a_i^(j)*",
          [&, i, j, m] { return core_residual(as(i, j) * tt(j), m * (tt(j) * as(i, j)), 2 * kLetter); });
      for (int k = 1; k < j; ++k) {
        add("stage_twist_lower" + idx({i, j, k}), "a_i^(k)* a_j^(k) = mu a_j^(k) a_i^(k)*",
            [&, i, j, k, m] { return core_residual(as(i, k) * a(j, k), m * (a(j, k) * as(i, k)), 2 * kLetter); });
      }
    }
  }
  for (int i = 1; i <= d; ++i) {
    add("hermitian" + idx({i}), "T_i commutes with t_i t_i^*", [&, i] {
      const LinearOperator r = tt(i) * ts(i);
      return core_residual(tr.T(i) * r, r * tr.T(i), 2 * kQuadratic);
    });
    add("trace.stage" + idx({i}), "a_i^(i) = T_i t_i",
        [&, i] { return core_residual(a(i, i), tr.T(i) * tt(i), kQuadratic + kLetter); });
  }
  for (int j = 0; j <= d; ++j) {
    add("trace.projection" + idx({j}), "P_j^2 = P_j", [&, j] {
      return core_residual(tr.P(j) * tr.P(j), tr.P(j), 2 * kQuadratic);
    });
    add("trace.hermitian" + idx({j}), "P_j^* = P_j",
        [&, j] { return core_residual(tr.P(j).adjoint(), tr.P(j), kQuadratic); });
  }

  VerificationReport report("lemma_suite");
  report.set_param("d", static_cast<std::int64_t>(d));
  report.set_param("mu", mu);
  report.set_param("cap", static_cast<std::int64_t>(t.basis.cap()));
  for (Check& c : run_checks(tasks, execution)) report.add(std::move(c));
  return report;
}

VerificationReport roundtrip_check(const GeneratorFamily& t, double mu, double rank_tol) {
  VerificationReport report("roundtrip");
  report.set_param("d", static_cast<std::int64_t>(t.d()));
  report.set_param("mu", mu);
  report.set_param("cap", static_cast<std::int64_t>(t.basis.cap()));
  report.set_param("rank_tol", rank_tol);
  const double tol = kPreconditionTolerance;

  const TildeResult forward = tilde_a_family(t, mu);
  report.append(tccr_residuals(forward.family, tol), "A.");
  try {
    const GeneratorFamily back = hat_s_family(forward.family, rank_tol);
    report.append(pi_residuals(back, tol), "A.");
    for (int i = 1; i <= t.d(); ++i) {
      report.add("A.generator" + idx({i}), "S^_i(a~(t)) = t_i", core_residual(back.t(i), t.t(i), kLetter), tol);
    }
  } catch (const Error& e) {
    report.add("A.hat_s", std::string("S^(a~(t)) failed: ") + e.what(), failed_residual(), tol);
  }

  const bool fock = t.spec && t.spec->is_fock();
  const TccrFamily a = fock ? build_fock_tccr(t.d(), mu, t.basis.cap()) : forward.family;
  report.set_param("direction_b_input", std::string(fock ? "fock_closed_form" : "tilde_a"));
  try {
    const GeneratorFamily s = hat_s_family(a, rank_tol);
    report.append(pi_residuals(s, tol), "B.");
    const TildeResult again = tilde_a_family(s, mu);
    report.append(tccr_residuals(again.family, tol), "B.");
    for (int i = 1; i <= t.d(); ++i) {
      report.add("B.generator" + idx({i}), "a~_i(S^(a)) = a_i",
                 core_residual(again.family.a(i), a.a(i), kLetter), tol);
    }
  } catch (const Error& e) {
    report.add("B.roundtrip", std::string("a~(S^(a)) failed: ") + e.what(), failed_residual(), tol);
  }
  return report;
}

VerificationReport polar_structure_checks(const TccrFamily& a, double rank_tol) {
  const int d = a.d();
  const double mu = a.mu;
  const double tol = kPreconditionTolerance;
  std::vector<LinearOperator> c;
  std::vector<LinearOperator> s;
  std::vector<LinearOperator> c2;
  for (int i = 1; i <= d; ++i) {
    PolarPair p = polar_left(a.a(i), rank_tol);
    c.push_back(p.positive_part);
    s.push_back(p.isometric_part);
    c2.push_back(c.back() * c.back());
  }
  auto C = [&c](int i) -> const LinearOperator& { return c[static_cast<std::size_t>(i - 1)]; };
  auto S = [&s](int i) -> const LinearOperator& { return s[static_cast<std::size_t>(i - 1)]; };
  auto C2 = [&c2](int i) -> const LinearOperator& { return c2[static_cast<std::size_t>(i - 1)]; };
  const Complex m2(mu * mu);
  const int degree = kLetter + kQuadratic;

  VerificationReport report("polar_structure");
  report.set_param("d", static_cast<std::int64_t>(d));
  report.set_param("mu", mu);
  report.set_param("cap", static_cast<std::int64_t>(a.basis.cap()));
  // The polar factors of a Fock family only commute for mu > 0: for mu < 0
  // S_i carries a sign (-1)^{n_1 + ... + n_{i-1}}, and for mu = 0 it is cut
  // down to the vacuum of the earlier slots.
  const bool shifts_commute = mu > 0.0;
  report.set_param("shift_commutation_checked", shifts_commute);

  for (int i = 1; i <= d; ++i) {
    LinearOperator inner = LinearOperator::identity(a.basis) + m2 * C2(i);
    for (int j = 1; j < i; ++j) inner -= (Complex(1.0) - m2) * C2(j);
    report.add("diag" + idx({i}), "C_i^2 S_i = S_i (1 + mu^2 C_i^2 - (1-mu^2) sum_{j<i} C_j^2)",
               core_residual(C2(i) * S(i), S(i) * inner, degree), tol);
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      const Complex factor = j < i ? m2 : Complex(1.0);
      report.add("twist" + idx({i, j}), j < i ? "C_i^2 S_j = mu^2 S_j C_i^2" : "C_i^2 S_j = S_j C_i^2",
                 core_residual(C2(i) * S(j), factor * (S(j) * C2(i)), degree), tol);
      if (j > i) {
        report.add("commute_c" + idx({i, j}), "C_i C_j = C_j C_i", core_residual(C(i) * C(j), C(j) * C(i), 2 * kQuadratic),
                   tol);
        if (shifts_commute) {
          report.add("commute_s" + idx({i, j}), "S_i S_j = S_j S_i", core_residual(S(i) * S(j), S(j) * S(i), 2 * kLetter),
                     tol);
          report.add("commute_s_adj" + idx({i, j}), "S_i^* S_j = S_j S_i^*",
                     core_residual(S(i).adjoint() * S(j), S(j) * S(i).adjoint(), 2 * kLetter), tol);
        }
      }
    }
  }
  const LinearOperator defect = LinearOperator::identity(a.basis) - S(1) * S(1).adjoint();
  for (int i = 2; i <= d; ++i) {
    const LinearOperator expanded = conjugation_series(S(1), defect * a.a(i), mu);
    report.add("expansion" + idx({i}), "a_i = sum_n mu^n S_1^n (1 - S_1 S_1^*) a_i S_1^{*n}",
               core_residual(expanded, a.a(i), kLetter + kQuadratic), tol);
  }
  return report;
}

VerificationReport one_mode_polar_check(double q, int cap, double rank_tol) {
  const LinearOperator a = build_qccr_single(q, cap);
  const LinearOperator s = polar_left(a, rank_tol).isometric_part;
  // sum_{n=1}^{N} q^{n-1} S^n S^{*n}, all further powers vanish
  LinearOperator series = LinearOperator::zero(a.basis());
  LinearOperator sn = s;
  double weight = 1.0;
  for (int n = 1; n <= cap; ++n) {
    series += Complex(weight) * (sn * sn.adjoint());
    sn = s * sn;
    weight *= q;
  }
  const LinearOperator rebuilt = psd_sqrt(series) * s;

  VerificationReport report("qccr");
  report.set_param("q", q);
  report.set_param("cap", static_cast<std::int64_t>(cap));
  report.set_param("rank_tol", rank_tol);
  const std::vector<LinearOperator> gens{a};
  report.append(RelationSet::qccr().residuals(gens, q, kLemmaTolerance, "relation."));
  report.add("isometry", "S^* S = 1 on the core",
             core_residual(s.adjoint() * s, LinearOperator::identity(a.basis()), 2 * kLetter), kLemmaTolerance);
  report.add("reconstruction", "a = (sum_n q^{n-1} S^n S^{*n})^{1/2} S", core_residual(rebuilt, a, kLetter),
             kPreconditionTolerance);
  return report;
}

}  // namespace tccr
