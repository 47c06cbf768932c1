#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "tccr/fock_core.hpp"

using namespace tccr;

TEST_SUITE("fock_core") {
  TEST_CASE("basis enumeration is lexicographic with the first slot most significant") {
    const FockBasis basis(2, 2);
    CHECK(basis.size() == 9);
    const auto all = basis.enumerate();
    REQUIRE(all.size() == 9);
    CHECK(all[0].entries == std::vector<int>{0, 0});
    CHECK(all[1].entries == std::vector<int>{0, 1});
    CHECK(all[3].entries == std::vector<int>{1, 0});
    CHECK(all[8].entries == std::vector<int>{2, 2});
    for (std::size_t k = 0; k < basis.size(); ++k) {
      CHECK(basis.index_of(basis.at(k)) == k);
      CHECK(basis.at(k).entries == oracle::digits(k, 2, 2));
    }
  }

  TEST_CASE("scalar basis is one-dimensional") {
    const FockBasis basis = FockBasis::scalar(5);
    CHECK(basis.size() == 1);
    CHECK(basis.slots() == 0);
    CHECK(basis.cap() == 5);
    CHECK(basis.core_indices(0).size() == 1);
  }

  TEST_CASE("core indices count (level + 1)^slots") {
    const FockBasis basis(3, 5);
    for (int level = 0; level <= 5; ++level) {
      CHECK(basis.core_indices(level).size() == oracle::dimension(3, level));
    }
  }

  TEST_CASE("invalid or oversized bases are rejected") {
    CHECK_THROWS_AS(enumerate_basis(0, 3), ParameterError);
    CHECK_THROWS_AS(enumerate_basis(2, 0), ParameterError);
    CHECK_THROWS_AS(FockBasis(6, 9), CapacityError);
    setenv("TCCR_MAX_DIM", "10", 1);
    CHECK_THROWS_AS(FockBasis(2, 3), CapacityError);
    CHECK_NOTHROW(FockBasis(1, 9));
    unsetenv("TCCR_MAX_DIM");
    CHECK(max_dimension() == kDefaultMaxDimension);
  }

  TEST_CASE("capacity error names the requested dimension") {
    try {
      FockBasis(6, 9);
      FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
      CHECK(std::string(e.what()).find("(10)^6") != std::string::npos);
    }
  }

  TEST_CASE("kron places the first factor on the most significant slot") {
    const int cap = 3;
    const Matrix s = truncated_shift(cap);
    const Matrix one = Matrix::Identity(cap + 1, cap + 1);
    const std::vector<Matrix> first{s, one};
    const std::vector<Matrix> second{vacuum_projector(cap), s};
    CHECK((kron(first) - oracle::lattice_isometry(2, 1, cap)).norm() == 0.0);
    CHECK((kron(second) - oracle::lattice_isometry(2, 2, cap)).norm() == 0.0);
  }

  TEST_CASE("truncated shift: defect is the vacuum projector and S e_N = 0") {
    const Matrix s = truncated_shift(4);
    CHECK((Matrix::Identity(5, 5) - s * s.adjoint() - vacuum_projector(4)).norm() == 0.0);
    CHECK(s.col(4).norm() == 0.0);
  }

  TEST_CASE("operator norm matches a JacobiSVD oracle") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 40; ++k) {
      const auto rows = static_cast<Eigen::Index>(1 + k % 9);
      const auto cols = static_cast<Eigen::Index>(1 + (k * 5) % 11);
      const Matrix m = oracle::random_matrix(rng, rows, cols, k % 2 ? 0.8 : 0.0);
      CHECK(operator_norm(m) == doctest::Approx(oracle::svd_norm(m)).epsilon(1e-12));
    }
    CHECK(operator_norm(Matrix::Zero(4, 4)) == 0.0);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(operator_norm(bad), NumericError);
  }

  TEST_CASE("psd_sqrt squares back and is Hermitian positive") {
    std::mt19937_64 rng(11);
    const FockBasis basis(1, 7);
    for (int k = 0; k < 25; ++k) {
      const Matrix x = oracle::random_matrix(rng, 8, 3 + k % 6, k % 3 == 0 ? 0.7 : 0.0);
      const LinearOperator b(basis, x * x.adjoint());
      const LinearOperator r = psd_sqrt(b);
      CHECK(((r * r).matrix() - b.matrix()).norm() <= 1e-10 * (1.0 + b.matrix().norm()));
      CHECK((r.matrix() - r.matrix().adjoint()).norm() <= 1e-12 * (1.0 + r.matrix().norm()));
      Eigen::SelfAdjointEigenSolver<Matrix> eig(r.matrix());
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
  }

  TEST_CASE("psd_sqrt rejects negative and non-Hermitian input, clamps round-off") {
    const FockBasis basis(1, 1);
    Matrix neg = Matrix::Identity(2, 2);
    neg(1, 1) = -0.5;
    try {
      psd_sqrt(LinearOperator(basis, neg));
      FAIL("expected NotPsdError");
    } catch (const NotPsdError& e) {
      CHECK(e.eigenvalue() == doctest::Approx(-0.5));
    }
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(psd_sqrt(LinearOperator(basis, skew)), NumericError);
    Matrix tiny = Matrix::Identity(2, 2);
    tiny(1, 1) = -1e-13;
    const LinearOperator r = psd_sqrt(LinearOperator(basis, tiny));
    CHECK(r.matrix()(1, 1) == Complex(0.0));
    CHECK(r.matrix()(0, 0) == Complex(1.0));
  }

  TEST_CASE("polar decomposition of random matrices") {
    std::mt19937_64 rng(3);
    const FockBasis basis(1, 5);
    for (int k = 0; k < 50; ++k) {
      Matrix a = oracle::random_matrix(rng, 6, 6, k % 2 ? 0.75 : 0.0);
      if (k % 5 == 0) a.col(2).setZero();
      const PolarPair p = polar_left(LinearOperator(basis, a));
      const Matrix& s = p.isometric_part.matrix();
      const Matrix& c = p.positive_part.matrix();
      const double scale = 1.0 + a.norm();
      CHECK((c * s - a).norm() <= 1e-10 * scale);
      CHECK((c * c - a * a.adjoint()).norm() <= 1e-10 * scale * scale);
      CHECK((s * s.adjoint() * s - s).norm() <= 1e-10);
      CHECK((c - c.adjoint()).norm() <= 1e-12 * scale);
    }
  }

  TEST_CASE("polar decomposition of a weighted shift recovers the shift") {
    const int cap = 6;
    const FockBasis basis(1, cap);
    Matrix a = Matrix::Zero(cap + 1, cap + 1);
    for (int k = 0; k < cap; ++k) a(k + 1, k) = 1.0 + 0.1 * k;
    const PolarPair p = polar_left(LinearOperator(basis, a));
    CHECK((p.isometric_part.matrix() - truncated_shift(cap)).norm() <= 1e-14);
    CHECK(polar_left(LinearOperator::zero(basis)).isometric_part.matrix().norm() == 0.0);
    CHECK_THROWS_AS(polar_left(LinearOperator(basis, a), 0.0), ParameterError);
  }

  TEST_CASE("core norm restricts columns to the core") {
    const int cap = 4;
    const FockBasis basis(2, cap);
    std::mt19937_64 rng(5);
    const Matrix m = oracle::random_matrix(rng, 25, 25);
    const LinearOperator op(basis, m);
    for (int degree = 0; degree <= cap; ++degree) {
      CHECK(core_norm(op, degree) ==
            doctest::Approx(oracle::svd_norm(oracle::restrict_to_core(m, 2, cap, cap - degree))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(core_norm(op, cap + 1), TruncationError);
  }

  TEST_CASE("operators on different bases do not mix") {
    const LinearOperator a = LinearOperator::identity(FockBasis(1, 3));
    const LinearOperator b = LinearOperator::identity(FockBasis(2, 1));
    CHECK_THROWS_AS(a + b, BasisMismatchError);
    CHECK_THROWS_AS(a * b, BasisMismatchError);
  }

  TEST_CASE("power and compose_all") {
    const FockBasis basis(1, 4);
    const LinearOperator s(basis, truncated_shift(4));
    CHECK((power(s, 0).matrix() - Matrix::Identity(5, 5)).norm() == 0.0);
    CHECK(power(s, 5).matrix().norm() == 0.0);
    const std::vector<LinearOperator> factors{s, s.adjoint(), s};
    CHECK((compose_all(factors).matrix() - s.matrix() * s.matrix().adjoint() * s.matrix()).norm() == 0.0);
  }

  TEST_CASE("operator json round trip") {
    std::mt19937_64 rng(9);
    const LinearOperator op(FockBasis(2, 1), oracle::random_matrix(rng, 4, 4));
    const LinearOperator back = operator_from_json(to_json(op));
    CHECK(back.basis() == op.basis());
    CHECK((back.matrix() - op.matrix()).norm() == 0.0);
  }
}
