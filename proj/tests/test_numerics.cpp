#include "doctest.h"

#include "cpdil/error.hpp"
#include "cpdil/numerics.hpp"
#include "oracles.hpp"

using namespace cpdil;

TEST_SUITE("numerics") {
  TEST_CASE("hermitian eigenvalues agree with the Jacobi oracle") {
    oracle::Rng rng(11);
    for (std::size_t n = 1; n <= 6; ++n) {
      const CMatrix h = rng.hermitian(n);
      const auto spec = hermitian_eigen(h);
      const auto ref = oracle::jacobi_eigenvalues(h);
      for (std::size_t i = 0; i < n; ++i) CHECK(spec.values[static_cast<Eigen::Index>(i)] == doctest::Approx(ref[i]).epsilon(1e-10));
      CHECK((spec.vectors * spec.values.cast<Complex>().asDiagonal() * spec.vectors.adjoint() - h).norm() < 1e-10);
      CHECK(min_eigenvalue(h) == doctest::Approx(ref.front()).epsilon(1e-10));
    }
  }

  TEST_CASE("non-square inputs are rejected") {
    const CMatrix m = CMatrix::Zero(2, 3);
    CHECK_THROWS_AS(hermitian_eigen(m), Error);
    try {
      min_eigenvalue(m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonSquare);
    }
  }

  TEST_CASE("psd test uses the tolerance floor") {
    CMatrix m = CMatrix::Identity(2, 2);
    m(1, 1) = -1e-12;
    CHECK(is_psd(m));
    m(1, 1) = -1e-3;
    CHECK_FALSE(is_psd(m));
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(is_psd(bad), Error);
  }

  TEST_CASE("kron matches the index formula") {
    oracle::Rng rng(3);
    const CMatrix a = rng.gaussian(2, 3);
    const CMatrix b = rng.gaussian(3, 2);
    CHECK((kron(a, b) - oracle::naive_kron(a, b)).norm() < 1e-14);
  }

  TEST_CASE("vec is column stacking and vec(a x b) = (b^T kron a) vec(x)") {
    oracle::Rng rng(5);
    const CMatrix a = rng.gaussian(3, 3);
    const CMatrix x = rng.gaussian(3, 3);
    const CMatrix b = rng.gaussian(3, 3);
    const CVector v = vec(x);
    CHECK(v[1] == x(1, 0));
    CHECK(v[3] == x(0, 1));
    CHECK((vec(a * x * b) - kron(b.transpose(), a) * v).norm() < 1e-12);
    CHECK((unvec(v, 3, 3) - x).norm() == 0.0);
    CHECK_THROWS_AS(unvec(v, 2, 2), Error);
  }

  TEST_CASE("spectral norm and psd square root") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    CHECK(spectral_norm(d) == doctest::Approx(4.0));
    oracle::Rng rng(9);
    const CMatrix g = rng.gaussian(3, 3);
    const CMatrix p = g * g.adjoint();
    const CMatrix r = psd_sqrt(p);
    CHECK((r * r - p).norm() < 1e-10);
    CHECK(hermiticity_residual(r) < 1e-12);
  }

  TEST_CASE("span builder finds the dimension of a span") {
    oracle::Rng rng(17);
    std::vector<CMatrix> family;
    const CMatrix a = rng.gaussian(2, 2);
    const CMatrix b = rng.gaussian(2, 2);
    family.push_back(a);
    family.push_back(b);
    family.push_back(a + Complex(0, 2) * b);
    family.push_back(rng.gaussian(2, 2));
    const auto basis = span_basis(family);
    CHECK(basis.size() == oracle::family_rank(family));
    CHECK(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(std::abs(frobenius_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
    SpanBuilder sb(1, 1);
    CHECK(sb.try_add(CMatrix::Constant(1, 1, 2.0), 1e-9));
    CHECK(sb.complete());
    CHECK_FALSE(sb.try_add(CMatrix::Constant(1, 1, 1.0), 1e-9));
  }

  TEST_CASE("snap projection rounds eigenvalues and reports the change") {
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 0) = 1.0 + 1e-8;
    p(1, 1) = 1e-9;
    double res = 0.0;
    const CMatrix q = snap_projection(p, 1e-6, &res);
    CHECK(projection_residual(q) < 1e-14);
    CHECK(res == doctest::Approx(std::hypot(1e-8, 1e-9)).epsilon(1e-3));
  }

  TEST_CASE("hermitian matrix basis is orthonormal and spans M_d") {
    const auto basis = hermitian_matrix_basis(3);
    CHECK(basis.size() == 9);
    CHECK(oracle::family_rank(basis) == 9);
    for (const auto& b : basis) CHECK(hermiticity_residual(b) == 0.0);
  }

  TEST_CASE("tolerance validation") {
    Tolerance t{-1.0, 0.0};
    CHECK_THROWS_AS(t.validate(), Error);
    CHECK(Tolerance{}.threshold(2.0) == doctest::Approx(3e-9));
  }
}
