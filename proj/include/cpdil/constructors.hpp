#pragma once

// Fixture factory: Parrott-type commuting contractions and the Markov triple
// built from them, cross-commuting Kraus families, Schaffer-type isometric
// dilations truncated at a horizon, Stinespring representations and the
// truncated dilation tower of a unital CP map.

#include <cstddef>
#include <vector>

#include "cpdil/dilation.hpp"
#include "cpdil/semigroup.hpp"

namespace cpdil {

struct ContractionTuple {
  std::size_t dim = 0;
  std::vector<CMatrix> ops;

  // Spectral norms <= 1 + tol and pairwise commutation. Throws
  // DimensionMismatch, NotContraction or NotCommuting.
  void validate(const Tolerance& tol = {}) const;
};

CMatrix pauli_x();
CMatrix pauli_z();

// t_i = [[0, 0], [A_i, 0]] on C^{2m} with (A_1, A_2, A_3) = (I, U, V).
// Throws NotUnitary, DimensionMismatch.
ContractionTuple parrott_contractions(const CMatrix& u, const CMatrix& v, const Tolerance& tol = {});

// ||UV - VU|| in spectral norm. Throws NotUnitary.
double obstruction_norm(const CMatrix& u, const CMatrix& v, const Tolerance& tol = {});

// Each operator t -> t (+) 1, repeated `pad` times.
ContractionTuple pad_tuple(const ContractionTuple& t, std::size_t pad);

// Semigroup over N^k generated by a |-> t_i a t_i^*. Throws NotCommuting.
CpSemigroup conjugation_triple(const ContractionTuple& t, const Tolerance& tol = {});

struct MarkovPipeline {
  ContractionTuple contractions;  // padded Parrott triple
  CpSemigroup base;               // its conjugation semigroup (contractive, not unital)
  CpSemigroup unitalized;
};

MarkovPipeline markov_pipeline(const CMatrix& u, const CMatrix& v, std::size_t pad,
                               const Tolerance& tol = {});

// Unitalized conjugation semigroup of the padded Parrott triple; dimension 2m + pad + 1.
CpSemigroup markov_counterexample(const CMatrix& u, const CMatrix& v, std::size_t pad,
                                  const Tolerance& tol = {});

// Semigroup over N^3 from three Kraus families with sum k k^* = I each and
// r_i s_j = s_j r_i across families. Throws NotUnitalFamily and
// CrossCommutationFailure (message names the offending operators).
CpSemigroup cross_commuting_triple(const std::vector<CMatrix>& r, const std::vector<CMatrix>& s,
                                   const std::vector<CMatrix>& t, const Tolerance& tol = {});

// Certificate for the semigroup n |-> conjugation(t^n) at horizon N on
// K = H (+) D^N, D the range of (I - t^*t)^{1/2}, with
// v(h, d_1, ..., d_N) = (t h, D_t h, d_1, ..., d_{N-1}). Throws NotContraction.
DilationCertificate schaffer_truncated(const CMatrix& t, std::size_t n, const Tolerance& tol = {});

// Orthonormal basis (as k x 1 columns) of span{v_s W h : s <= horizon}.
// Throws NotConjugationForm unless every generator is conjugation by one operator.
std::vector<CMatrix> minimal_subspace(const DilationCertificate& cert, const Tolerance& tol = {});

struct Stinespring {
  CMatrix v;  // (d*m) x d, row index h*m + i
  std::size_t multiplicity = 0;
};

// V h = sum_i (k_i^* h) (x) e_i over a minimal Kraus family, so that
// T(a) = V^*(a (x) I_m)V and V^*V = T(I). Kraus phases are fixed so that the
// largest entry of each k_i is real and positive. Throws NotCp.
Stinespring stinespring(const CpMap& t, const Tolerance& tol = {});

// max over matrix units of ||T(a) - V^*(a (x) I)V||_F.
double stinespring_residual(const CpMap& t, const Stinespring& s);

// Truncated tower on K = H (x) (C^m)^{(x)N}: the single generator is
// conjugation by A_f^* (f < m), A_f = (I (x) e_f^*) V_N, where V_N applies a
// unitary extension of the Stinespring isometry to (H, slot 1), sends the
// produced C^m factor out, shifts slots 2..N down and fills slot N with e_0.
// W h = h (x) e_0^{(x)N}. Throws NotUnital, NotCp.
DilationCertificate tower_truncated(const CpMap& t, std::size_t n, const Tolerance& tol = {});

// Multiplicativity of theta on the sub-corner P B(K) P, P the projection
// onto slot N = e_0, together with unitality of theta. `multiplicity` is the
// per-slot dimension m used to build the tower.
VerificationReport tower_subcorner_report(const DilationCertificate& cert, std::size_t multiplicity,
                                          const Tolerance& tol = {});

}  // namespace cpdil
