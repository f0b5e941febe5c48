#pragma once

// Dilation certificates (p, K, B, theta) for CP-semigroups over N^k and the
// predicates that check them: dilation, strong dilation, the unital
// equivalence of the two, minimality by two independent routes, the
// full-algebra consequence of minimality, and the corner restriction that
// turns a dilation of the unitalized semigroup into a strong dilation of the
// original one.
//
// Every universally quantified statement "for all s" is checked on the box
// s <= horizon carried by the certificate, and the reports say so.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cpdil/algebra.hpp"
#include "cpdil/numerics.hpp"
#include "cpdil/report.hpp"
#include "cpdil/semigroup.hpp"

namespace cpdil {

// Linear map M_in -> M_out. Stored either in operator-sum form
// b |-> sum_i v_i b v_i^* (what the constructors produce; the superoperator
// of a tower certificate would have n^4 entries) or as a dense
// superoperator on column-stacked vectors (what certificate files carry).
// Multiplicativity and *-preservation are properties to check, not assume.
class Endomap {
 public:
  static Endomap conjugation(std::vector<CMatrix> ops);
  static Endomap conjugation(const CMatrix& v) { return conjugation(std::vector<CMatrix>{v}); }
  static Endomap from_superop(CMatrix superop, std::size_t in_dim, std::size_t out_dim);
  static Endomap from_superop(CMatrix superop);  // square case, n inferred

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  bool is_square() const { return in_dim_ == out_dim_; }

  bool has_kraus() const { return superop_.size() == 0; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  // Dense superoperator (out^2 x in^2).
  CMatrix superop() const;

  CMatrix apply(const CMatrix& b) const;

  // Choi matrix sum_ij E_ij (x) e(E_ij), (in*out)^2 entries.
  CMatrix choi() const;

 private:
  Endomap() = default;

  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
  std::vector<CMatrix> kraus_;
  CMatrix superop_;
};

// outer o inner.
Endomap compose(const Endomap& outer, const Endomap& inner);

// b |-> c^* e(c b c^*) c for an isometry c (big x small).
Endomap compress(const Endomap& e, const CMatrix& c);

struct DilationCertificate {
  std::size_t h_dim = 0;
  std::size_t k_dim = 0;
  CMatrix embed;  // k_dim x h_dim isometry W, p = W W^*
  MatrixStarAlgebra algebra = MatrixStarAlgebra::full(1);
  std::vector<Endomap> theta;
  MultiIndex horizon;

  // Checks shapes, the isometry W^*W = I and horizon/generator counts.
  // Throws DimensionMismatch, ArityMismatch or InvalidArgument.
  void validate() const;

  CMatrix projection() const { return embed * embed.adjoint(); }

  // theta_s = theta_1^{s_1} o ... o theta_k^{s_k}.
  Endomap theta_at(const MultiIndex& s) const;

  // theta_s(b) by repeated application (innermost generator first).
  CMatrix apply(const MultiIndex& s, const CMatrix& b) const;
};

DilationCertificate make_certificate(CMatrix embed, std::vector<Endomap> theta, MultiIndex horizon,
                                     std::optional<MatrixStarAlgebra> algebra = std::nullopt);

VerificationReport endomorphism_check(const Endomap& e, const MatrixStarAlgebra& a,
                                      const Tolerance& tol = {});

// T_s(a) = W^* theta_s(W a W^*) W for Hermitian basis a and s <= horizon,
// plus the semigroup law of theta (pairwise commutation of its generators).
VerificationReport is_dilation(const DilationCertificate& cert, const CpSemigroup& g,
                               const Tolerance& tol = {});

// T_s(W^* b W) = W^* theta_s(b) W for every basis element b of the algebra.
VerificationReport is_strong_dilation(const DilationCertificate& cert, const CpSemigroup& g,
                                      const Tolerance& tol = {});

// For Markov semigroups: theta_s(p) >= p, p theta_s(b) p = p theta_s(pbp) p,
// and dilation => strong dilation on the same inputs. Throws NotMarkov.
VerificationReport unital_equivalence_check(const DilationCertificate& cert, const CpSemigroup& g,
                                            const Tolerance& tol = {});

struct MinimalityAssessment {
  bool generated_matches = false;  // W*-algebra generated by theta_s(A) equals B
  bool carrier_is_identity = false;
  bool words_span_k = false;
  bool route_a = false;  // generated_matches && carrier_is_identity
  bool route_b = false;  // generated_matches && words_span_k
  std::size_t generated_dimension = 0;
  std::size_t word_span_dimension = 0;
  VerificationReport report;
};

MinimalityAssessment assess_minimality(const DilationCertificate& cert, const CpSemigroup& g,
                                       const Tolerance& tol = {});

// Report view of assess_minimality: overall passes iff both routes say
// minimal, and a "routes_agree" entry records their agreement.
VerificationReport is_minimal(const DilationCertificate& cert, const CpSemigroup& g,
                              const Tolerance& tol = {});

// For a minimal dilation of a semigroup on the full matrix algebra: the
// commutant of B is trivial and B = B(K). Throws NotMinimal.
VerificationReport lemma_minBK_check(const DilationCertificate& cert, const CpSemigroup& g,
                                     const Tolerance& tol = {});

struct CornerRestriction {
  DilationCertificate certificate;
  VerificationReport report;
};

// Builds a strong dilation of g from a dilation of gu = unitalize(g) by
// cutting down to the corner 1 - q, q the projection onto the adjoined
// dimension. Throws NotUnitalization when gu is not the unitalization of g
// and NotADilation when cert_u is not a dilation of gu or theta~_s(q) >= q
// fails.
CornerRestriction corner_restriction(const CpSemigroup& g, const CpSemigroup& gu,
                                     const DilationCertificate& cert_u, const Tolerance& tol = {});

}  // namespace cpdil
