#pragma once

// Certificates shared by the unit tests and the acceptance binary.

#include <cmath>
#include <vector>

#include "cpdil/constructors.hpp"
#include "cpdil/dilation.hpp"

namespace fixtures {

using cpdil::CMatrix;

// u = [[sqrt(l), -sqrt(1-l)], [sqrt(1-l), sqrt(l)]].
inline CMatrix rotation(double lambda) {
  CMatrix u(2, 2);
  const double a = std::sqrt(lambda);
  const double b = std::sqrt(1.0 - lambda);
  u << a, -b, b, a;
  return u;
}

// K = C^2, W = e_1, theta = conjugation by the rotation. Its corner is the
// map a |-> lambda a on C, and the full strong identity fails at b = E_22.
inline cpdil::DilationCertificate rotation_certificate(double lambda, std::size_t horizon) {
  CMatrix w = CMatrix::Zero(2, 1);
  w(0, 0) = 1.0;
  return cpdil::make_certificate(w, {cpdil::Endomap::conjugation(rotation(lambda))},
                                 cpdil::MultiIndex::uniform(1, horizon));
}

// Finite unitary dilation of a contraction t on H^{N+1}:
//   [ t    0 ... 0  D_t* ]
//   [ D_t  0 ... 0  -t^* ]
//   [ 0    I        0    ]
//   [        ...         ]
//   [ 0    ...   I  0    ]
// with D_t = (I - t^*t)^{1/2}, D_t* = (I - t t^*)^{1/2}. Compressions of U^n
// reproduce t^n for n <= N, so conjugation by U is a dilation up to the
// horizon N; it is not strong whenever t is not unitary.
inline cpdil::DilationCertificate egervary_certificate(const CMatrix& t, std::size_t horizon) {
  const auto d = t.rows();
  const auto blocks = static_cast<Eigen::Index>(horizon) + 1;
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix u = CMatrix::Zero(blocks * d, blocks * d);
  u.block(0, 0, d, d) = t;
  u.block(0, (blocks - 1) * d, d, d) = cpdil::psd_sqrt(id - t * t.adjoint());
  u.block(d, 0, d, d) = cpdil::psd_sqrt(id - t.adjoint() * t);
  u.block(d, (blocks - 1) * d, d, d) = -t.adjoint();
  for (Eigen::Index b = 2; b < blocks; ++b) u.block(b * d, (b - 1) * d, d, d) = id;
  CMatrix w = CMatrix::Zero(blocks * d, d);
  w.topRows(d) = id;
  return cpdil::make_certificate(w, {cpdil::Endomap::conjugation(u)}, cpdil::MultiIndex::uniform(1, horizon));
}

// K' = K (+) C with theta' = conjugation by v (+) 1 and B' = B(K) (+) C.
inline cpdil::DilationCertificate enlarged(const cpdil::DilationCertificate& cert, bool block_algebra) {
  const auto k = static_cast<Eigen::Index>(cert.k_dim);
  CMatrix w = CMatrix::Zero(k + 1, static_cast<Eigen::Index>(cert.h_dim));
  w.topRows(k) = cert.embed;
  std::vector<cpdil::Endomap> theta;
  for (const auto& e : cert.theta) {
    std::vector<CMatrix> ops;
    for (const auto& v : e.kraus()) ops.push_back(cpdil::direct_sum(v, CMatrix::Identity(1, 1)));
    theta.push_back(cpdil::Endomap::conjugation(std::move(ops)));
  }
  std::optional<cpdil::MatrixStarAlgebra> algebra;
  if (block_algebra) {
    std::vector<CMatrix> span;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) span.push_back(cpdil::matrix_unit(k + 1, k + 1, i, j));
    }
    span.push_back(cpdil::matrix_unit(k + 1, k + 1, k, k));
    algebra = cpdil::MatrixStarAlgebra::from_spanning(cert.k_dim + 1, span);
  }
  return cpdil::make_certificate(std::move(w), std::move(theta), cert.horizon, std::move(algebra));
}

// K = H, W = I, theta = T = conjugation by a unitary.
inline cpdil::DilationCertificate automorphism_certificate(const CMatrix& u, std::size_t horizon) {
  return cpdil::make_certificate(CMatrix::Identity(u.rows(), u.cols()), {cpdil::Endomap::conjugation(u)},
                                 cpdil::MultiIndex::uniform(1, horizon));
}

}  // namespace fixtures
