#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "tccr/reconstruct.hpp"
#include "tccr/relations.hpp"

using namespace tccr;

TEST_SUITE("reconstruct") {
  TEST_CASE("a~ for one generator matches direct summation") {
    const int cap = 8;
    const GeneratorFamily t = build_irrep({1, 1, 0.0, cap, 0.0});
    const TildeResult r = tilde_a_family(t, 0.5);
    for (int n = 0; n < cap; ++n) {
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) sum += std::pow(0.25, k);
      CHECK(r.family.a(1).matrix()(n + 1, n).real() == doctest::Approx(std::sqrt(sum)).epsilon(1e-13));
    }
    CHECK(r.family.a(1).matrix().col(cap).norm() == 0.0);
  }

  TEST_CASE("a~ of the Fock class equals the closed-form lattice weights") {
    for (double mu : {-0.7, 0.5, 0.9}) {
      const GeneratorFamily t = build_irrep({3, 3, 0.0, 4, 0.0});
      const TildeResult r = tilde_a_family(t, mu);
      for (int i = 1; i <= 3; ++i) {
        CHECK((r.family.a(i).matrix() - oracle::lattice_tccr(3, i, mu, 4)).norm() <= 1e-12);
      }
      CHECK(tccr_residuals(r.family).all_passed());
    }
  }

  TEST_CASE("mu = 0 collapses both constructions to the identity") {
    const GeneratorFamily t = build_irrep({3, 3, 0.0, 5, 0.0});
    const TildeResult r = tilde_a_family(t, 0.0);
    for (int i = 1; i <= 3; ++i) CHECK((r.family.a(i).matrix() - t.t(i).matrix()).norm() <= 1e-12);
    const TccrFamily a = build_fock_tccr(3, 0.0, 5);
    const GeneratorFamily s = hat_s_family(a);
    for (int i = 1; i <= 3; ++i) CHECK((s.t(i).matrix() - a.a(i).matrix()).norm() <= 1e-12);
  }

  TEST_CASE("S^ of the Fock family is the Fock partial-isometry family on the core") {
    const TccrFamily a = build_fock_tccr(2, 0.5, 8);
    const GeneratorFamily s = hat_s_family(a);
    const GeneratorFamily t = build_irrep({2, 2, 0.0, 8, 0.0});
    for (int i = 1; i <= 2; ++i) CHECK(core_residual(s.t(i), t.t(i), 1) <= 1e-10);
    CHECK(pi_residuals(s, 1e-8).all_passed());
  }

  TEST_CASE("constructions check their preconditions") {
    TccrFamily a = build_fock_tccr(2, 0.5, 5);
    a.ops[0] *= Complex(1.1);
    CHECK_THROWS_AS(hat_s_family(a), PreconditionError);
    GeneratorFamily t = build_irrep({2, 2, 0.0, 5, 0.0});
    t.ops[1] *= Complex(0.5);
    CHECK_THROWS_AS(tilde_a_family(t, 0.5), PreconditionError);
    CHECK_THROWS_AS(tilde_a_family(build_irrep({2, 2, 0.0, 5, 0.0}), 1.0), ParameterError);
    try {
      hat_s_family(a);
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("tccr.diag[1]") != std::string::npos);
    }
  }

  TEST_CASE("conjugation series: nilpotent and idempotent cases") {
    const FockBasis basis(1, 4);
    const LinearOperator s(basis, truncated_shift(4));
    const LinearOperator p(basis, vacuum_projector(4));
    // sum_n c^n S^n P S^{*n} = diag(c^n)
    const LinearOperator d = conjugation_series(s, p, 0.5);
    for (int n = 0; n <= 4; ++n) CHECK(d.matrix()(n, n).real() == doctest::Approx(std::pow(0.5, n)));
    // t = e^{i phi} P is not nilpotent: sum_n c^n P = P / (1 - c)
    const LinearOperator t = std::polar(1.0, 0.3) * p;
    const LinearOperator g = conjugation_series(t, p, 0.9);
    CHECK(std::abs(g.matrix()(0, 0) - Complex(10.0)) <= 1e-12);
  }

  TEST_CASE("trace records stages, positive parts and defects") {
    const GeneratorFamily t = build_irrep({3, 3, 0.0, 5, 0.0});
    const TildeResult r = tilde_a_family(t, 0.5);
    CHECK(r.trace.stages.size() == 6);
    CHECK(r.trace.defects.size() == 4);
    CHECK((r.trace.P(0).matrix() - Matrix::Identity(216, 216)).norm() == 0.0);
    CHECK((r.trace.stage(2, 1).matrix() - r.family.a(2).matrix()).norm() == 0.0);
  }

  TEST_CASE("lemma suite lists every instance and passes on every class") {
    const GeneratorFamily fock = build_irrep({2, 2, 0.0, 6, 0.0});
    const VerificationReport r = verify_lemma_suite(fock, 0.5);
    CHECK(r.all_passed());
    for (const char* id : {"peel[2,1]", "peel_absorb[1,2,1]", "orth_left[1,2,1]", "orth_right_adj[1,2,1]",
                           "powers[1,2,2]", "powers[2,3,1]", "stage_ccr[1,1]", "stage_ccr[2,1]",
                           "stage_orth[2,1,2]", "stage_twist[2,1]", "hermitian[2]", "trace.projection[0]"}) {
      CHECK_MESSAGE(r.find(id) != nullptr, id);
    }
    for (int j = 0; j < 2; ++j) {
      CHECK(verify_lemma_suite(build_irrep({2, j, std::numbers::pi / 3.0, 6, 0.0}), -0.6).all_passed());
    }
    CHECK(verify_lemma_suite(fock, 0.5, Execution::Serial) == r);
  }

  TEST_CASE("twist between lower stages needs three generators") {
    const VerificationReport r = verify_lemma_suite(build_irrep({3, 3, 0.0, 6, 0.0}), 0.5);
    CHECK(r.all_passed());
    CHECK(r.find("stage_twist_lower[3,2,1]") != nullptr);
  }

  TEST_CASE("roundtrip in both directions for Fock and non-Fock classes") {
    const VerificationReport fock = roundtrip_check(build_irrep({2, 2, 0.0, 8, 0.0}), 0.5);
    CHECK(fock.all_passed());
    CHECK(fock.find("A.generator[2]") != nullptr);
    CHECK(fock.find("B.generator[2]") != nullptr);
    CHECK(std::get<std::string>(fock.params().at("direction_b_input")) == "fock_closed_form");
    const VerificationReport other = roundtrip_check(build_irrep({2, 1, 0.0, 8, 0.0}), 0.5);
    CHECK(other.all_passed());
    CHECK(std::get<std::string>(other.params().at("direction_b_input")) == "tilde_a");
    CHECK(roundtrip_check(build_irrep({2, 2, 0.0, 6, 0.0}), 0.0).max_residual() <= 1e-12);
  }

  TEST_CASE("polar factor relations of the Fock family") {
    CHECK(polar_structure_checks(build_fock_tccr(3, 0.5, 5)).all_passed());
    const VerificationReport negative = polar_structure_checks(build_fock_tccr(2, -0.5, 6));
    CHECK(negative.all_passed());
    CHECK(negative.find("commute_s[1,2]") == nullptr);
  }

  TEST_CASE("one-mode q-CCR polar identity") {
    for (double q : {-0.5, 0.3, 0.9}) CHECK(one_mode_polar_check(q, 12).all_passed());
  }
}
