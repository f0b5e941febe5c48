#include "cpdil/cpmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

namespace {

CMatrix choi_from_kraus(const std::vector<CMatrix>& kraus, std::size_t d) {
  CMatrix c = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    const CVector v = vec(k);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

}  // namespace

CpMap::CpMap(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::DimensionMismatch, "empty Kraus family");
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "zero-dimensional Kraus operator");
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    const auto& k = kraus_[i];
    if (static_cast<std::size_t>(k.rows()) != dim_ || static_cast<std::size_t>(k.cols()) != dim_) {
      std::ostringstream os;
      os << "Kraus operator " << i << " is " << k.rows() << "x" << k.cols() << ", expected "
         << dim_ << "x" << dim_;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
  }
  choi_ = choi_from_kraus(kraus_, dim_);
}

CpMap CpMap::identity(std::size_t d) { return CpMap({CMatrix::Identity(d, d)}); }

CMatrix CpMap::superoperator() const {
  const auto d2 = static_cast<Eigen::Index>(dim_ * dim_);
  CMatrix s = CMatrix::Zero(d2, d2);
  for (const auto& k : kraus_) s += kron(k.conjugate(), k);
  return s;
}

CMatrix CpMap::apply(const CMatrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != dim_ || static_cast<std::size_t>(a.cols()) != dim_) {
    std::ostringstream os;
    os << "argument is " << a.rows() << "x" << a.cols() << ", map acts on " << dim_ << "x" << dim_;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out.noalias() += k * a * k.adjoint();
  return out;
}

CMatrix CpMap::apply_via_choi(const CMatrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != dim_ || static_cast<std::size_t>(a.cols()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "argument shape does not match map dimension");
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out += a(i, j) * choi_.block(i * d, j * d, d, d);
  }
  return out;
}

CpMap CpMap::compressed(double relative_cutoff) const {
  if (kraus_.size() <= 1) return *this;
  const auto spec = hermitian_eigen(choi_);
  const double top = std::max(spec.values.maxCoeff(), 0.0);
  if (top == 0.0) return CpMap({CMatrix::Zero(dim_, dim_)});
  std::vector<CMatrix> ops;
  for (Eigen::Index i = spec.values.size() - 1; i >= 0; --i) {
    const double lambda = spec.values[i];
    if (lambda <= relative_cutoff * top) break;
    ops.push_back(std::sqrt(lambda) * unvec(spec.vectors.col(i), dim_, dim_));
  }
  if (ops.size() >= kraus_.size()) return *this;
  return CpMap(std::move(ops));
}

CpMap from_kraus(std::vector<CMatrix> ops) { return CpMap(std::move(ops)); }

CMatrix choi(const CpMap& t) { return t.choi(); }

std::vector<CMatrix> kraus_from_choi(const CMatrix& c, const Tolerance& tol) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorCode::NonSquare, "Choi matrix is not square");
  }
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(c.rows()))));
  if (d * d != static_cast<std::size_t>(c.rows()) || d == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "Choi matrix size " + std::to_string(c.rows()) + " is not a positive square");
  }
  require_hermitian(c, tol);
  const auto spec = hermitian_eigen(c);
  const double floor = -tol.threshold(c.norm());
  if (spec.values[0] < floor) {
    std::ostringstream os;
    os << "Choi matrix has eigenvalue " << spec.values[0] << " below " << floor;
    throw Error(ErrorCode::NotPsd, os.str());
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index i = spec.values.size() - 1; i >= 0; --i) {
    const double lambda = spec.values[i];
    if (lambda <= tol.abs) break;
    ops.push_back(std::sqrt(lambda) * unvec(spec.vectors.col(i), d, d));
  }
  if (ops.empty()) ops.push_back(CMatrix::Zero(d, d));
  return ops;
}

CMatrix apply(const CpMap& t, const CMatrix& a) { return t.apply(a); }

CpMap compose(const CpMap& t, const CpMap& s) {
  if (t.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot compose maps on dimensions " +
                                                  std::to_string(t.dim()) + " and " +
                                                  std::to_string(s.dim()));
  }
  std::vector<CMatrix> ops;
  ops.reserve(t.kraus().size() * s.kraus().size());
  for (const auto& a : t.kraus()) {
    for (const auto& b : s.kraus()) ops.push_back(a * b);
  }
  return CpMap(std::move(ops));
}

MapClass classify(const CpMap& t, const Tolerance& tol) {
  MapClass out;
  const auto d = t.dim();
  const CMatrix id = CMatrix::Identity(d, d);

  const double choi_min = min_eigenvalue(t.choi());
  out.is_cp = choi_min >= -tol.threshold(t.choi().norm());
  out.residuals.push_back({"choi_min_eigenvalue", choi_min});

  const CMatrix image = t.apply(id);
  const double unital_res = (image - id).norm();
  out.is_unital = unital_res <= tol.threshold(id.norm());
  out.residuals.push_back({"unital_residual", unital_res});

  const CMatrix defect = id - image;
  const double defect_min = min_eigenvalue(defect);
  out.is_contractive = out.is_unital || defect_min >= -tol.threshold(defect.norm());
  out.residuals.push_back({"contractive_min_eigenvalue", defect_min});
  return out;
}

double commutation_residual(const CpMap& t, const CpMap& s) {
  if (t.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "commutation check across dimensions " +
                                                  std::to_string(t.dim()) + " and " +
                                                  std::to_string(s.dim()));
  }
  const CMatrix st = t.superoperator();
  const CMatrix ss = s.superoperator();
  return (st * ss - ss * st).norm();
}

bool commutes(const CpMap& t, const CpMap& s, const Tolerance& tol) {
  const CMatrix st = t.superoperator();
  const CMatrix ss = s.superoperator();
  const double scale = std::max((st * ss).norm(), (ss * st).norm());
  return commutation_residual(t, s) <= tol.threshold(scale);
}

CpMap conjugation(const CMatrix& t) {
  if (t.rows() != t.cols()) {
    throw Error(ErrorCode::NonSquare, "conjugating operator must be square");
  }
  return CpMap({t});
}

double superoperator_distance(const CpMap& t, const CpMap& s) {
  if (t.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "maps act on different dimensions");
  }
  return (t.choi() - s.choi()).norm();
}

double multiplicativity_residual(const CpMap& t) {
  const auto d = t.dim();
  std::vector<CMatrix> images;
  images.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) images.push_back(t.apply(matrix_unit(d, d, i, j)));
  }
  // E_ij E_kl = delta_jk E_il
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
          CMatrix lhs = (j == k) ? images[i * d + l] : CMatrix::Zero(d, d);
          lhs -= images[i * d + j] * images[k * d + l];
          worst = std::max(worst, lhs.norm());
        }
      }
    }
  }
  return worst;
}

}  // namespace cpdil
