#include "doctest.h"

#include "cpdil/error.hpp"
#include "cpdil/semigroup.hpp"
#include "oracles.hpp"

using namespace cpdil;

namespace {

CpSemigroup commuting_pair(oracle::Rng& rng, std::size_t d) {
  const CMatrix u = rng.unitary(d);
  std::vector<CpMap> gens;
  for (int g = 0; g < 2; ++g) {
    CMatrix diag = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) diag(i, i) = Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
    gens.push_back(conjugation(u * diag * u.adjoint()));
  }
  return CpSemigroup::from_generators(std::move(gens));
}

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("multi-index arithmetic and boxes") {
    const MultiIndex a({1, 0, 2});
    const MultiIndex b({0, 3, 1});
    CHECK((a + b) == MultiIndex({1, 3, 3}));
    CHECK(a.str() == "(1,0,2)");
    CHECK(a.total() == 3);
    CHECK(MultiIndex::zero(3).is_zero());
    CHECK(a.dominated_by(MultiIndex({1, 1, 2})));
    CHECK_FALSE(a.dominated_by(MultiIndex({0, 5, 5})));
    CHECK_THROWS_AS(a + MultiIndex({1}), Error);
    const auto box = box_indices(MultiIndex({1, 2}));
    CHECK(box.size() == 6);
    CHECK(box.front() == MultiIndex({0, 0}));
    CHECK(box.back() == MultiIndex({1, 2}));
  }

  TEST_CASE("evaluate follows the canonical product") {
    oracle::Rng rng(31);
    const CpSemigroup g = commuting_pair(rng, 3);
    CHECK(superoperator_distance(g.evaluate(MultiIndex({0, 0})), CpMap::identity(3)) < 1e-14);
    const CMatrix s = g.generator(0).superoperator();
    const CMatrix t = g.generator(1).superoperator();
    const CMatrix expected = s * s * t;
    CHECK((g.evaluate(MultiIndex({2, 1})).superoperator() - expected).norm() < 1e-12);
    CHECK_THROWS_AS(g.evaluate(MultiIndex({1})), Error);
  }

  TEST_CASE("semigroup law holds on the box") {
    oracle::Rng rng(32);
    const CpSemigroup g = commuting_pair(rng, 2);
    const VerificationReport r = verify_semigroup_law(g, MultiIndex({2, 2}));
    CHECK(r.overall());
    CHECK(r.max_residual() < 1e-12);
  }

  TEST_CASE("construction checks name the failing generators") {
    oracle::Rng rng(33);
    try {
      CpSemigroup::from_generators({conjugation(rng.gaussian(2, 2)), conjugation(rng.gaussian(2, 2))},
                                   Tolerance{1e-9, 1e-9});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::NotContractive || e.code() == ErrorCode::NotCommuting));
    }
    try {
      CpSemigroup::from_generators({conjugation(0.5 * rng.unitary(2)), conjugation(0.5 * rng.unitary(2))});
      FAIL("expected NotCommuting");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotCommuting);
    }
  }

  TEST_CASE("unitalization of a scalar contraction") {
    const CpSemigroup g = CpSemigroup::from_generators({conjugation(CMatrix::Constant(1, 1, std::sqrt(0.3)))});
    const CpSemigroup gu = unitalize(g);
    CHECK(gu.dim() == 2);
    CHECK(is_markov(gu));
    // [a h; g c] |-> [0.3 a + 0.7 c, 0; 0, c]
    CMatrix x(2, 2);
    x << 2.0, 5.0, 7.0, 3.0;
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 0.3 * 2.0 + 0.7 * 3.0;
    expected(1, 1) = 3.0;
    CHECK((gu.generator(0).apply(x) - expected).norm() < 1e-12);
    const VerificationReport c = compression_check(g, gu, 10, MultiIndex({4}));
    CHECK(c.overall());
  }

  TEST_CASE("unitalization rejects expansive maps") {
    try {
      unitalize_map(conjugation(CMatrix::Constant(1, 1, 1.5)));
      FAIL("expected NotContractive");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotContractive);
    }
  }

  TEST_CASE("markov report lists unitality and commutation") {
    oracle::Rng rng(34);
    const CpSemigroup g = commuting_pair(rng, 2);
    const VerificationReport r = markov_report(g);
    CHECK_FALSE(r.overall());
    CHECK(markov_report(unitalize(g)).overall());
  }

  TEST_CASE("compression check fails against a wrong unital extension") {
    const CpSemigroup g = CpSemigroup::from_generators({conjugation(CMatrix::Constant(1, 1, 0.5))});
    const CpSemigroup wrong = CpSemigroup::from_generators({CpMap::identity(2)});
    CHECK_FALSE(compression_check(g, wrong, 5, MultiIndex({2})).overall());
  }
}
