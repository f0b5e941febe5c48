#pragma once

// Test-only reference implementations that share no code with the library:
// a cyclic Jacobi eigensolver, Gaussian-elimination rank and index-formula
// versions of the Kronecker product and superoperator. Plus seeded random
// generators for fixtures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cpdil/numerics.hpp"

namespace oracle {

using cpdil::CMatrix;
using cpdil::Complex;

// Eigenvalues of a Hermitian matrix, ascending. The n x n complex problem is
// embedded as the real symmetric 2n x 2n matrix [[Re, -Im], [Im, Re]], whose
// spectrum is that of h with every eigenvalue doubled; cyclic Jacobi sweeps
// diagonalize it.
inline std::vector<double> jacobi_eigenvalues(const CMatrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.rows());
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      at(i, j) = z.real();
      at(i + n, j + n) = z.real();
      at(i, j + n) = -z.imag();
      at(i + n, j) = z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

inline double jacobi_min_eigenvalue(const CMatrix& h) { return jacobi_eigenvalues(h).front(); }

// Rank by Gaussian elimination with partial pivoting; pivots below
// tol * (largest entry) count as zero.
inline std::size_t gaussian_rank(CMatrix a, double tol = 1e-9) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  if (scale == 0.0) return 0;
  std::size_t rank = 0;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = r;
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
    }
    if (std::abs(a(piv, c)) <= tol * scale) continue;
    for (Eigen::Index j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      const Complex f = a(i, c) / a(r, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
    ++rank;
  }
  return rank;
}

// Rank of a family of matrices viewed as vectors.
inline std::size_t family_rank(const std::vector<CMatrix>& family, double tol = 1e-9) {
  if (family.empty()) return 0;
  const auto len = family.front().size();
  CMatrix m(static_cast<Eigen::Index>(family.size()), len);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Eigen::Index j = 0; j < len; ++j) m(static_cast<Eigen::Index>(i), j) = family[i].data()[j];
  }
  return gaussian_rank(m, tol);
}

inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

// Superoperator from its definition: column (i + n j) is vec(T(E_ij)).
template <typename Map>
CMatrix superop_by_units(Map&& t, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix s(nn * nn, nn * nn);
  for (Eigen::Index j = 0; j < nn; ++j) {
    for (Eigen::Index i = 0; i < nn; ++i) {
      CMatrix e = CMatrix::Zero(nn, nn);
      e(i, j) = 1.0;
      const CMatrix img = t(e);
      for (Eigen::Index c = 0; c < nn; ++c) {
        for (Eigen::Index r = 0; r < nn; ++r) s(r + nn * c, i + nn * j) = img(r, c);
      }
    }
  }
  return s;
}

inline CMatrix kraus_apply(const std::vector<CMatrix>& ops, const CMatrix& a) {
  CMatrix out = CMatrix::Zero(ops.front().rows(), ops.front().rows());
  for (const auto& k : ops) out += k * a * k.adjoint();
  return out;
}

// ---------------------------------------------------------------------------
// Seeded fixtures
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }

  CMatrix gaussian(std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(), normal());
    }
    return m;
  }

  CMatrix hermitian(std::size_t n) {
    const CMatrix g = gaussian(n, n);
    return 0.5 * (g + g.adjoint());
  }

  CMatrix unitary(std::size_t n) {
    Eigen::HouseholderQR<CMatrix> qr(gaussian(n, n));
    return qr.householderQ();
  }

  // Spectral norm exactly `norm`.
  CMatrix contraction(std::size_t n, double norm) {
    const CMatrix g = gaussian(n, n);
    Eigen::JacobiSVD<CMatrix> svd(g);
    return g * (norm / svd.singularValues()(0));
  }

  std::vector<CMatrix> kraus(std::size_t d, std::size_t count) {
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(gaussian(d, d));
    return out;
  }

  // Kraus family with sum k^* k scaled so that T(I) = sum k k^* has norm `level`.
  std::vector<CMatrix> contractive_kraus(std::size_t d, std::size_t count, double level) {
    auto ops = kraus(d, count);
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : ops) sum += k * k.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sum, Eigen::EigenvaluesOnly);
    const double s = std::sqrt(level / es.eigenvalues().maxCoeff());
    for (auto& k : ops) k *= s;
    return ops;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

}  // namespace oracle
