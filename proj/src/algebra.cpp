#include "cpdil/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

namespace {

void require_shape(const CMatrix& x, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(x.rows()) != n || static_cast<std::size_t>(x.cols()) != n) {
    std::ostringstream os;
    os << what << " is " << x.rows() << "x" << x.cols() << ", ambient dimension is " << n;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

// Orthonormal null vectors of the PSD matrix g, eigenvalues <= tol.threshold(max eigenvalue).
std::vector<CVector> null_vectors(const CMatrix& g, const Tolerance& tol) {
  const auto spec = hermitian_eigen(g);
  const double top = std::max(0.0, spec.values.maxCoeff());
  const double cut = tol.threshold(top);
  std::vector<CVector> out;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] <= cut) out.push_back(spec.vectors.col(i));
  }
  return out;
}

}  // namespace

MatrixStarAlgebra MatrixStarAlgebra::full(std::size_t n) { return MatrixStarAlgebra(n, true, {}); }

MatrixStarAlgebra MatrixStarAlgebra::scalars(std::size_t n) {
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  if (n == 1) return full(1);
  return MatrixStarAlgebra(n, false, {CMatrix(s * CMatrix::Identity(n, n))});
}

MatrixStarAlgebra MatrixStarAlgebra::from_spanning(std::size_t n, std::span<const CMatrix> spanning,
                                                   const Tolerance& tol) {
  SpanBuilder builder(n, n);
  for (const auto& x : spanning) {
    require_shape(x, n, "algebra element");
    builder.try_add(x, tol.threshold(x.norm()));
    if (builder.complete()) return full(n);
  }
  return MatrixStarAlgebra(n, false, builder.basis());
}

CMatrix MatrixStarAlgebra::element(std::size_t i) const {
  if (full_) return matrix_unit(n_, n_, i / n_, i % n_);
  return basis_.at(i);
}

std::vector<CMatrix> MatrixStarAlgebra::basis() const {
  if (!full_) return basis_;
  std::vector<CMatrix> out;
  out.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) out.push_back(element(i));
  return out;
}

double MatrixStarAlgebra::distance(const CMatrix& x) const {
  require_shape(x, n_, "matrix");
  if (full_) return 0.0;
  CMatrix r = x;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis_) r -= frobenius_inner(b, r) * b;
  }
  return r.norm();
}

bool MatrixStarAlgebra::contains(const CMatrix& x, const Tolerance& tol) const {
  return distance(x) <= tol.threshold(x.norm());
}

VerificationReport MatrixStarAlgebra::closure_report(const Tolerance& tol) const {
  VerificationReport report("algebra_closure");
  if (full_) {
    report.add("adjoint_closure", 0.0, tol.abs);
    report.add("product_closure", 0.0, tol.abs);
    report.add("contains_identity", 0.0, tol.abs);
    return report;
  }
  double adj = 0.0;
  double prod = 0.0;
  for (const auto& b : basis_) {
    adj = std::max(adj, distance(b.adjoint()));
    for (const auto& c : basis_) prod = std::max(prod, distance(b * c));
  }
  const CMatrix id = CMatrix::Identity(n_, n_);
  report.add("adjoint_closure", adj, tol.threshold(1.0));
  report.add("product_closure", prod, tol.threshold(1.0));
  report.add("contains_identity", distance(id), tol.threshold(id.norm()));
  return report;
}

MatrixStarAlgebra generated_star_algebra(std::span<const CMatrix> seeds, std::size_t n,
                                         const Tolerance& tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  SpanBuilder gens(n, n);
  for (const auto& s : seeds) {
    require_shape(s, n, "seed");
    gens.try_add(s, tol.threshold(s.norm()));
    const CMatrix sa = s.adjoint();
    gens.try_add(sa, tol.threshold(sa.norm()));
  }
  const std::vector<CMatrix> generators = gens.basis();

  SpanBuilder span(n, n);
  span.try_add(CMatrix::Identity(n, n), 0.0);
  for (std::size_t i = 0; i < span.size(); ++i) {
    const CMatrix b = span.element(i);
    for (const auto& g : generators) {
      const CMatrix w = g * b;
      span.try_add(w, tol.threshold(w.norm()));
      if (span.complete()) return MatrixStarAlgebra::full(n);
    }
  }
  std::vector<CMatrix> basis = span.basis();
  return MatrixStarAlgebra::from_spanning(n, basis, tol);
}

MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, const Tolerance& tol) {
  const auto n = a.ambient_dim();
  if (a.is_full()) return MatrixStarAlgebra::scalars(n);
  const auto nn = static_cast<Eigen::Index>(n);
  const CMatrix id = CMatrix::Identity(nn, nn);
  CMatrix s1 = CMatrix::Zero(nn, nn);
  CMatrix s2 = CMatrix::Zero(nn, nn);
  CMatrix cross = CMatrix::Zero(nn * nn, nn * nn);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const CMatrix b = a.element(i);
    s1 += b.adjoint() * b;
    s2 += b.conjugate() * b.transpose();
    cross += kron(b.transpose(), b.adjoint()) + kron(b.conjugate(), b);
  }
  const CMatrix gram = kron(id, s1) + kron(s2, id) - cross;
  const auto null = null_vectors(gram, tol);
  if (null.size() == n * n) return MatrixStarAlgebra::full(n);
  std::vector<CMatrix> basis;
  basis.reserve(null.size());
  for (const auto& v : null) basis.push_back(unvec(v, n, n));
  return MatrixStarAlgebra::from_spanning(n, basis, tol);
}

MatrixStarAlgebra center(const MatrixStarAlgebra& a, const Tolerance& tol) {
  const auto n = a.ambient_dim();
  if (a.is_full()) return MatrixStarAlgebra::scalars(n);
  const auto dim = a.dimension();
  // Coefficients c with sum_i c_i [a_i, a_j] = 0 for every j.
  std::vector<CMatrix> basis = a.basis();
  CMatrix gram = CMatrix::Zero(dim, dim);
  CMatrix cols(n * n, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      cols.col(i) = vec(basis[i] * basis[j] - basis[j] * basis[i]);
    }
    gram.noalias() += cols.adjoint() * cols;
  }
  const auto null = null_vectors(gram, tol);
  std::vector<CMatrix> elems;
  for (const auto& c : null) {
    CMatrix x = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < dim; ++i) x += c[static_cast<Eigen::Index>(i)] * basis[i];
    elems.push_back(std::move(x));
  }
  return MatrixStarAlgebra::from_spanning(n, elems, tol);
}

std::vector<CMatrix> minimal_central_projections(const MatrixStarAlgebra& a, const Tolerance& tol) {
  const auto n = a.ambient_dim();
  const MatrixStarAlgebra z = center(a, tol);
  std::mt19937_64 rng(0xc3a7);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  CMatrix h = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    const CMatrix e = z.element(i);
    h += coeff(rng) * 0.5 * (e + e.adjoint());
    h += coeff(rng) * Complex(0.0, -0.5) * (e - e.adjoint());
  }
  const auto spec = hermitian_eigen(h);
  const double spread = std::max(1.0, spec.values.cwiseAbs().maxCoeff());
  std::vector<CMatrix> out;
  Eigen::Index start = 0;
  const auto count = spec.values.size();
  for (Eigen::Index i = 1; i <= count; ++i) {
    if (i == count || spec.values[i] - spec.values[i - 1] > 1e-6 * spread) {
      const auto block = spec.vectors.middleCols(start, i - start);
      out.push_back(block * block.adjoint());
      start = i;
    }
  }
  return out;
}

CMatrix central_carrier(const MatrixStarAlgebra& a, const CMatrix& p, const Tolerance& tol) {
  const auto n = a.ambient_dim();
  require_shape(p, n, "projection");
  const double pres = projection_residual(p);
  if (pres > tol.threshold(p.norm())) {
    std::ostringstream os;
    os << "projection residual " << pres;
    throw Error(ErrorCode::NotProjection, os.str());
  }
  const double dist = a.distance(p);
  if (dist > tol.threshold(p.norm())) {
    std::ostringstream os;
    os << "projection lies at distance " << dist << " from the algebra";
    throw Error(ErrorCode::NotInAlgebra, os.str());
  }
  const auto spec = hermitian_eigen(p);
  std::vector<CVector> range;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] > 0.5) range.push_back(spec.vectors.col(i));
  }
  if (range.empty()) return CMatrix::Zero(n, n);
  if (a.is_full()) return CMatrix::Identity(n, n);
  SpanBuilder span(n, 1);
  for (std::size_t i = 0; i < a.dimension() && !span.complete(); ++i) {
    const CMatrix b = a.element(i);
    for (const auto& xi : range) span.try_add(b * xi, tol.abs);
  }
  const auto vectors = span.basis();
  return projector_onto(vectors, n);
}

double span_distance(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "algebras live in different ambient dimensions");
  }
  if (a.is_full() && b.is_full()) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, b.distance(a.element(i)));
  for (std::size_t i = 0; i < b.dimension(); ++i) worst = std::max(worst, a.distance(b.element(i)));
  return worst;
}

}  // namespace cpdil
