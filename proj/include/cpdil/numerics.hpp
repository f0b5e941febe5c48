#pragma once

// Dense complex-matrix kernel shared by every other module.
//
// Residuals are measured in the Frobenius norm; operator inequalities "x <= y"
// are decided by a Hermitian eigensolve of y - x. Every tolerance comparison
// goes through Tolerance::threshold so that the absolute and relative parts
// are applied the same way everywhere.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cpdil {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  // Acceptance threshold for a residual measured against a quantity of size `scale`.
  double threshold(double scale) const { return abs + rel * scale; }

  // Throws InvalidArgument for negative components.
  void validate() const;
};

double frobenius_norm(const CMatrix& m);
double spectral_norm(const CMatrix& m);

// ||M - M*||_F.
double hermiticity_residual(const CMatrix& m);

struct HermitianSpectrum {
  RVector values;  // ascending
  CMatrix vectors;  // columns are eigenvectors
};

// Eigendecomposition of the Hermitian part (M + M*)/2. Throws NonSquare.
HermitianSpectrum hermitian_eigen(const CMatrix& m);

// Smallest eigenvalue of the Hermitian part. Throws NonSquare.
double min_eigenvalue(const CMatrix& m);

// Checks square and Hermitian within tolerance; throws NonSquare / NotHermitian.
void require_hermitian(const CMatrix& m, const Tolerance& tol);

// True iff the minimum eigenvalue is >= -(tol.abs + tol.rel*||M||_F).
// Throws NonSquare or NotHermitian.
bool is_psd(const CMatrix& m, const Tolerance& tol = {});

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// Column-stacking vectorization and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols);

// Frobenius inner product <a, b> = tr(a* b).
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);

// Principal square root of a PSD matrix; negative round-off eigenvalues are clamped.
CMatrix psd_sqrt(const CMatrix& m);

// Orthonormal basis of the span of `vectors` (matrices are treated as vectors
// under the Frobenius inner product). A vector whose component orthogonal to
// the current basis has norm <= tol.abs is discarded.
std::vector<CMatrix> span_basis(std::span<const CMatrix> vectors, const Tolerance& tol = {});

// Orthogonal projection sum_i u_i u_i^* onto the span of orthonormal column vectors.
CMatrix projector_onto(std::span<const CMatrix> orthonormal_columns, std::size_t dim);

// Incremental orthonormal basis used by span_basis and the algebra closures.
// Classical Gram-Schmidt with one re-orthogonalization pass against the
// column-stacked basis.
class SpanBuilder {
 public:
  SpanBuilder(std::size_t rows, std::size_t cols);

  // Adds the normalized orthogonal component of v when its norm exceeds
  // `threshold`; returns whether the basis grew.
  bool try_add(const CMatrix& v, double threshold);

  // Norm of the component of v orthogonal to the current span.
  double distance(const CMatrix& v) const;

  std::size_t size() const { return size_; }
  bool complete() const { return size_ == rows_ * cols_; }
  std::vector<CMatrix> basis() const;
  CMatrix element(std::size_t i) const;

 private:
  CVector residual(const CMatrix& v) const;

  std::size_t rows_;
  std::size_t cols_;
  std::size_t size_ = 0;
  CMatrix q_;  // (rows*cols) x capacity, first size_ columns used
};

// Snaps the eigenvalues of a nearly-projective Hermitian matrix to {0, 1}
// when they are within `snap` of those values. `rounding_residual` receives
// the Frobenius distance between input and output.
CMatrix snap_projection(const CMatrix& p, double snap, double* rounding_residual = nullptr);

// ||P^2 - P||_F + ||P - P*||_F.
double projection_residual(const CMatrix& p);

// Hermitian matrix basis of the d x d matrices, orthonormal in Frobenius:
// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2.
std::vector<CMatrix> hermitian_matrix_basis(std::size_t d);

// Matrix unit e_i e_j^* of size rows x cols.
CMatrix matrix_unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

}  // namespace cpdil
