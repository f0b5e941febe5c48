#pragma once

// Finite-dimensional unital *-subalgebras of M_n, represented by an
// orthonormal (Frobenius) basis of their linear span.
//
// The full algebra M_n is kept symbolic: its basis is the matrix units
// E_ij (index i*n + j), produced on demand, since dilation spaces routinely
// have n^2 in the tens of thousands.

#include <cstddef>
#include <optional>
#include <vector>

#include "cpdil/numerics.hpp"
#include "cpdil/report.hpp"

namespace cpdil {

class MatrixStarAlgebra {
 public:
  static MatrixStarAlgebra full(std::size_t n);
  static MatrixStarAlgebra scalars(std::size_t n);

  // Orthonormalizes `spanning` (relative threshold tol) and adds nothing else;
  // closure properties are not enforced here (see closure_report).
  static MatrixStarAlgebra from_spanning(std::size_t n, std::span<const CMatrix> spanning,
                                         const Tolerance& tol = {});

  std::size_t ambient_dim() const { return n_; }
  std::size_t dimension() const { return full_ ? n_ * n_ : basis_.size(); }
  bool is_full() const { return full_; }

  // Basis element i; for the full algebra the matrix unit E_{i/n, i%n}.
  CMatrix element(std::size_t i) const;

  // Materialized basis. For the full algebra this allocates n^4 entries.
  std::vector<CMatrix> basis() const;

  // Frobenius norm of the component of x orthogonal to the algebra.
  double distance(const CMatrix& x) const;
  bool contains(const CMatrix& x, const Tolerance& tol = {}) const;

  // Adjoint closure, multiplicative closure over basis pairs and presence of
  // the identity.
  VerificationReport closure_report(const Tolerance& tol = {}) const;

 private:
  MatrixStarAlgebra(std::size_t n, bool full, std::vector<CMatrix> basis)
      : n_(n), full_(full), basis_(std::move(basis)) {}

  std::size_t n_ = 0;
  bool full_ = false;
  std::vector<CMatrix> basis_;
};

// Smallest unital *-subalgebra of M_n containing the seeds. Closure runs by
// left multiplication of the current span with a *-closed generating set
// until the span stops growing (at most n^2).
MatrixStarAlgebra generated_star_algebra(std::span<const CMatrix> seeds, std::size_t n,
                                         const Tolerance& tol = {});

// {x : xb = bx for every basis element b}, from the null space of
// sum_b L_b^* L_b with L_b = I (x) b - b^T (x) I.
MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, const Tolerance& tol = {});

// A intersected with its commutant.
MatrixStarAlgebra center(const MatrixStarAlgebra& a, const Tolerance& tol = {});

// Minimal projections of the center, found by splitting the spectrum of a
// generic self-adjoint central element (fixed seed).
std::vector<CMatrix> minimal_central_projections(const MatrixStarAlgebra& a,
                                                 const Tolerance& tol = {});

// Projection onto span{b xi : b in A, xi in range(p)}: the smallest central
// projection q of A with qp = p. Throws NotProjection and NotInAlgebra.
CMatrix central_carrier(const MatrixStarAlgebra& a, const CMatrix& p, const Tolerance& tol = {});

// Frobenius distance between the spans of two algebras in both directions
// (max over basis elements of the distance to the other span); 0 iff equal.
double span_distance(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b);

}  // namespace cpdil
