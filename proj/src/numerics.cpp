#include "cpdil/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

void Tolerance::validate() const {
  if (!(abs >= 0.0) || !(rel >= 0.0)) {
    std::ostringstream os;
    os << "tolerance components must be non-negative (abs=" << abs << ", rel=" << rel << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

double frobenius_norm(const CMatrix& m) { return m.norm(); }

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of the smaller Gram matrix.
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double hermiticity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  return (m - m.adjoint()).norm();
}

HermitianSpectrum hermitian_eigen(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  if (m.size() == 0) return {RVector(0), CMatrix(0, 0)};
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  if (m.size() == 0) return 0.0;
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void require_hermitian(const CMatrix& m, const Tolerance& tol) {
  const double res = hermiticity_residual(m);
  if (res > tol.threshold(m.norm())) {
    std::ostringstream os;
    os << "hermiticity residual " << res << " exceeds " << tol.threshold(m.norm());
    throw Error(ErrorCode::NotHermitian, os.str());
  }
}

bool is_psd(const CMatrix& m, const Tolerance& tol) {
  require_hermitian(m, tol);
  return min_eigenvalue(m) >= -tol.threshold(m.norm());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot reshape vector of length " + std::to_string(v.size()) + " to " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
  // Eigen storage is column-major, so the map is exactly column stacking.
  return Eigen::Map<const CMatrix>(v.data(), static_cast<Eigen::Index>(rows),
                                   static_cast<Eigen::Index>(cols));
}

Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
  return (a.array().conjugate() * b.array()).sum();
}

CMatrix psd_sqrt(const CMatrix& m) {
  const auto spec = hermitian_eigen(m);
  const RVector roots = spec.values.cwiseMax(0.0).cwiseSqrt();
  return spec.vectors * roots.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
}

SpanBuilder::SpanBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

CVector SpanBuilder::residual(const CMatrix& v) const {
  CVector r = vec(v);
  if (size_ == 0) return r;
  const auto used = q_.leftCols(static_cast<Eigen::Index>(size_));
  for (int pass = 0; pass < 2; ++pass) {
    const CVector coeffs = used.adjoint() * r;
    r.noalias() -= used * coeffs;
  }
  return r;
}

double SpanBuilder::distance(const CMatrix& v) const { return residual(v).norm(); }

bool SpanBuilder::try_add(const CMatrix& v, double threshold) {
  if (static_cast<std::size_t>(v.rows()) != rows_ || static_cast<std::size_t>(v.cols()) != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "span vector has shape " + std::to_string(v.rows()) +
                                                  "x" + std::to_string(v.cols()));
  }
  if (complete()) return false;
  CVector r = residual(v);
  const double n = r.norm();
  if (!(n > threshold)) return false;
  const auto len = static_cast<Eigen::Index>(rows_ * cols_);
  if (static_cast<Eigen::Index>(size_) == q_.cols()) {
    const Eigen::Index grown = std::min<Eigen::Index>(len, std::max<Eigen::Index>(8, 2 * q_.cols()));
    CMatrix bigger(len, grown);
    bigger.leftCols(q_.cols()) = q_;
    q_.swap(bigger);
  }
  q_.col(static_cast<Eigen::Index>(size_)) = r / n;
  ++size_;
  return true;
}

std::vector<CMatrix> SpanBuilder::basis() const {
  std::vector<CMatrix> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.push_back(unvec(q_.col(static_cast<Eigen::Index>(i)), rows_, cols_));
  }
  return out;
}

CMatrix SpanBuilder::element(std::size_t i) const {
  return unvec(q_.col(static_cast<Eigen::Index>(i)), rows_, cols_);
}

std::vector<CMatrix> span_basis(std::span<const CMatrix> vectors, const Tolerance& tol) {
  if (vectors.empty()) return {};
  SpanBuilder builder(vectors.front().rows(), vectors.front().cols());
  for (const auto& v : vectors) builder.try_add(v, tol.abs);
  return builder.basis();
}

CMatrix projector_onto(std::span<const CMatrix> orthonormal_columns, std::size_t dim) {
  CMatrix p = CMatrix::Zero(dim, dim);
  for (const auto& u : orthonormal_columns) p += u * u.adjoint();
  return p;
}

CMatrix snap_projection(const CMatrix& p, double snap, double* rounding_residual) {
  const auto spec = hermitian_eigen(p);
  RVector values = spec.values;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) <= snap) {
      values[i] = 0.0;
    } else if (std::abs(values[i] - 1.0) <= snap) {
      values[i] = 1.0;
    }
  }
  CMatrix out = spec.vectors * values.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  if (rounding_residual != nullptr) *rounding_residual = (out - p).norm();
  return out;
}

double projection_residual(const CMatrix& p) {
  return (p * p - p).norm() + (p - p.adjoint()).norm();
}

std::vector<CMatrix> hermitian_matrix_basis(std::size_t d) {
  std::vector<CMatrix> out;
  out.reserve(d * d);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) out.push_back(matrix_unit(d, d, i, i));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const CMatrix eij = matrix_unit(d, d, i, j);
      const CMatrix eji = matrix_unit(d, d, j, i);
      out.push_back(s * (eij + eji));
      out.push_back(Complex(0.0, s) * (eij - eji));
    }
  }
  return out;
}

CMatrix matrix_unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  CMatrix e = CMatrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

}  // namespace cpdil
