#include "doctest.h"

#include "cpdil/cpmap.hpp"
#include "cpdil/error.hpp"
#include "oracles.hpp"

using namespace cpdil;

namespace {

CMatrix transpose_choi(std::size_t d) {
  CMatrix c = CMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) c.block(i * d, j * d, d, d) = matrix_unit(d, d, j, i);
  }
  return c;
}

}  // namespace

TEST_SUITE("cpmap") {
  TEST_CASE("superoperator matches its definition on matrix units") {
    oracle::Rng rng(21);
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto ops = rng.kraus(d, 3);
      const CpMap t(ops);
      const CMatrix ref = oracle::superop_by_units([&](const CMatrix& a) { return oracle::kraus_apply(ops, a); }, d);
      CHECK((t.superoperator() - ref).norm() < 1e-11 * (1.0 + ref.norm()));
    }
  }

  TEST_CASE("choi blocks are the images of matrix units") {
    oracle::Rng rng(22);
    const CpMap t(rng.kraus(3, 2));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK((t.choi().block(i * 3, j * 3, 3, 3) - t.apply(matrix_unit(3, 3, i, j))).norm() < 1e-12);
      }
    }
    const CMatrix a = rng.gaussian(3, 3);
    CHECK((t.apply_via_choi(a) - t.apply(a)).norm() < 1e-11);
  }

  TEST_CASE("kraus recovery reproduces the map") {
    oracle::Rng rng(23);
    const CpMap t(rng.kraus(3, 4));
    const CpMap back(kraus_from_choi(t.choi()));
    CHECK(superoperator_distance(t, back) < 1e-10);
    CHECK(back.kraus().size() == oracle::family_rank(t.kraus()));
    CHECK(superoperator_distance(t, t.compressed()) < 1e-10);
  }

  TEST_CASE("transpose map is rejected with eigenvalue -1") {
    const CMatrix c = transpose_choi(2);
    CHECK(oracle::jacobi_min_eigenvalue(c) == doctest::Approx(-1.0));
    CHECK(min_eigenvalue(c) == doctest::Approx(-1.0));
    try {
      kraus_from_choi(c);
      FAIL("expected NotPsd");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPsd);
    }
  }

  TEST_CASE("kraus_from_choi shape errors") {
    CHECK_THROWS_AS(kraus_from_choi(CMatrix::Identity(3, 3)), Error);
    CHECK_THROWS_AS(kraus_from_choi(CMatrix::Identity(2, 3)), Error);
  }

  TEST_CASE("compose is t after s") {
    oracle::Rng rng(24);
    const CpMap t(rng.kraus(2, 2));
    const CpMap s(rng.kraus(2, 3));
    const CMatrix a = rng.gaussian(2, 2);
    CHECK((compose(t, s).apply(a) - t.apply(s.apply(a))).norm() < 1e-11);
    CHECK((compose(t, s).superoperator() - t.superoperator() * s.superoperator()).norm() < 1e-10);
  }

  TEST_CASE("classification of standard maps") {
    const MapClass id = classify(CpMap::identity(3));
    CHECK(id.is_cp);
    CHECK(id.is_unital);
    CHECK(id.is_contractive);

    const MapClass half = classify(conjugation(CMatrix::Constant(1, 1, 0.5)));
    CHECK(half.is_cp);
    CHECK_FALSE(half.is_unital);
    CHECK(half.is_contractive);

    const MapClass big = classify(conjugation(CMatrix::Constant(1, 1, 2.0)));
    CHECK_FALSE(big.is_contractive);
  }

  TEST_CASE("commutation of maps") {
    oracle::Rng rng(25);
    const CMatrix u = rng.unitary(3);
    CMatrix d1 = CMatrix::Zero(3, 3);
    CMatrix d2 = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      d1(i, i) = rng.uniform(-1, 1);
      d2(i, i) = Complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
    }
    const CpMap a = conjugation(u * d1 * u.adjoint());
    const CpMap b = conjugation(u * d2 * u.adjoint());
    CHECK(commutes(a, b));
    CHECK(commutation_residual(a, b) < 1e-12);
    const CpMap c = conjugation(rng.gaussian(3, 3));
    CHECK_FALSE(commutes(a, c));
  }

  TEST_CASE("multiplicativity residual vanishes exactly for isometric conjugations") {
    oracle::Rng rng(26);
    CHECK(multiplicativity_residual(conjugation(rng.unitary(3))) < 1e-12);
    CHECK(multiplicativity_residual(conjugation(0.5 * rng.unitary(3))) > 1e-3);
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(CpMap({}), Error);
    CHECK_THROWS_AS(CpMap({CMatrix::Zero(2, 3)}), Error);
    CHECK_THROWS_AS(CpMap({CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)}), Error);
    CHECK_THROWS_AS(CpMap::identity(2).apply(CMatrix::Zero(3, 3)), Error);
  }
}
