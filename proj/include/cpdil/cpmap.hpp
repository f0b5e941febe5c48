#pragma once

// Completely positive maps on the d x d matrices.
//
// Conventions:
//   * Kraus form        T(a) = sum_i k_i a k_i^*
//   * Choi matrix       C(T) = sum_ij E_ij (x) T(E_ij), so block (i,j) of C is T(E_ij).
//                       Equivalently C = sum_i vec(k_i) vec(k_i)^* with column stacking.
//   * Superoperator     vec(T(a)) = S vec(a), S = sum_i conj(k_i) (x) k_i.

#include <cstddef>
#include <string>
#include <vector>

#include "cpdil/numerics.hpp"

namespace cpdil {

class CpMap {
 public:
  // Throws DimensionMismatch for an empty family, non-square or mixed sizes.
  explicit CpMap(std::vector<CMatrix> kraus);

  static CpMap identity(std::size_t d);

  std::size_t dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const CMatrix& choi() const { return choi_; }

  // d^2 x d^2 matrix acting on column-stacked vectors.
  CMatrix superoperator() const;

  CMatrix apply(const CMatrix& a) const;

  // Same action, evaluated from the Choi blocks: T(a) = sum_ij a_ij T(E_ij).
  CMatrix apply_via_choi(const CMatrix& a) const;

  // Equivalent map with a minimal Kraus family (at most d^2 operators), derived
  // from the Choi eigendecomposition. Only eigenvalues below `relative_cutoff`
  // times the largest one are dropped.
  CpMap compressed(double relative_cutoff = 1e-14) const;

 private:
  std::size_t dim_ = 0;
  std::vector<CMatrix> kraus_;
  CMatrix choi_;
};

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

struct MapClass {
  bool is_cp = false;
  bool is_unital = false;
  bool is_contractive = false;
  std::vector<NamedResidual> residuals;
};

CpMap from_kraus(std::vector<CMatrix> ops);

CMatrix choi(const CpMap& t);

// Kraus family k_i = sqrt(lambda_i) unvec(v_i) over eigenpairs with lambda_i > tol.abs.
// Throws NotPsd when an eigenvalue lies below -(tol.abs + tol.rel ||C||), and
// DimensionMismatch when C is not d^2 x d^2.
std::vector<CMatrix> kraus_from_choi(const CMatrix& c, const Tolerance& tol = {});

CMatrix apply(const CpMap& t, const CMatrix& a);

// t o s, with Kraus family {t_i s_j}.
CpMap compose(const CpMap& t, const CpMap& s);

MapClass classify(const CpMap& t, const Tolerance& tol = {});

// ||C(t o s) - C(s o t)||_F.
double commutation_residual(const CpMap& t, const CpMap& s);

bool commutes(const CpMap& t, const CpMap& s, const Tolerance& tol = {});

// a |-> t a t^*.
CpMap conjugation(const CMatrix& t);

// ||C(t) - C(s)||_F, which equals the Frobenius distance of the superoperators.
double superoperator_distance(const CpMap& t, const CpMap& s);

// max over matrix-unit pairs of ||T(E_ij E_kl) - T(E_ij) T(E_kl)||_F.
// Zero iff T is multiplicative on the full matrix algebra.
double multiplicativity_residual(const CpMap& t);

}  // namespace cpdil
