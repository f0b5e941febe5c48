#include "cpdil/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

namespace {

void require_unitary(const CMatrix& u, const char* name, const Tolerance& tol) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(name) + " is not square");
  }
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  const double res = (u.adjoint() * u - id).norm() + (u * u.adjoint() - id).norm();
  if (res > tol.threshold(id.norm())) {
    std::ostringstream os;
    os << name << " is not unitary (residual " << res << ")";
    throw Error(ErrorCode::NotUnitary, os.str());
  }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

void ContractionTuple::validate(const Tolerance& tol) const {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (static_cast<std::size_t>(ops[i].rows()) != dim || static_cast<std::size_t>(ops[i].cols()) != dim) {
      throw Error(ErrorCode::DimensionMismatch, "operator " + std::to_string(i) + " is not " +
                                                    std::to_string(dim) + "x" + std::to_string(dim));
    }
    const double norm = spectral_norm(ops[i]);
    if (norm > 1.0 + tol.threshold(1.0)) {
      std::ostringstream os;
      os << "operator " << i << " has norm " << norm;
      throw Error(ErrorCode::NotContraction, os.str());
    }
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const CMatrix ij = ops[i] * ops[j];
      const double res = (ij - ops[j] * ops[i]).norm();
      if (res > tol.threshold(ij.norm())) {
        std::ostringstream os;
        os << "operators " << i << " and " << j << " do not commute (residual " << res << ")";
        throw Error(ErrorCode::NotCommuting, os.str());
      }
    }
  }
}

CMatrix pauli_x() {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

ContractionTuple parrott_contractions(const CMatrix& u, const CMatrix& v, const Tolerance& tol) {
  require_unitary(u, "U", tol);
  require_unitary(v, "V", tol);
  if (u.rows() != v.rows()) throw Error(ErrorCode::DimensionMismatch, "U and V differ in dimension");
  const auto m = u.rows();
  ContractionTuple out;
  out.dim = static_cast<std::size_t>(2 * m);
  for (const CMatrix& a : {CMatrix(CMatrix::Identity(m, m)), u, v}) {
    CMatrix t = CMatrix::Zero(2 * m, 2 * m);
    t.bottomLeftCorner(m, m) = a;
    out.ops.push_back(std::move(t));
  }
  return out;
}

double obstruction_norm(const CMatrix& u, const CMatrix& v, const Tolerance& tol) {
  require_unitary(u, "U", tol);
  require_unitary(v, "V", tol);
  if (u.rows() != v.rows()) throw Error(ErrorCode::DimensionMismatch, "U and V differ in dimension");
  return spectral_norm(u * v - v * u);
}

ContractionTuple pad_tuple(const ContractionTuple& t, std::size_t pad) {
  ContractionTuple out = t;
  out.dim += pad;
  if (pad == 0) return out;
  const CMatrix one = CMatrix::Identity(static_cast<Eigen::Index>(pad), static_cast<Eigen::Index>(pad));
  for (auto& op : out.ops) op = direct_sum(op, one);
  return out;
}

CpSemigroup conjugation_triple(const ContractionTuple& t, const Tolerance& tol) {
  if (t.ops.empty()) throw Error(ErrorCode::InvalidArgument, "empty contraction tuple");
  t.validate(tol);
  std::vector<CpMap> gens;
  gens.reserve(t.ops.size());
  for (const auto& op : t.ops) gens.push_back(conjugation(op));
  return CpSemigroup::from_generators(std::move(gens), tol);
}

MarkovPipeline markov_pipeline(const CMatrix& u, const CMatrix& v, std::size_t pad, const Tolerance& tol) {
  ContractionTuple tuple = pad_tuple(parrott_contractions(u, v, tol), pad);
  CpSemigroup base = conjugation_triple(tuple, tol);
  CpSemigroup unital = unitalize(base, tol);
  return {std::move(tuple), std::move(base), std::move(unital)};
}

CpSemigroup markov_counterexample(const CMatrix& u, const CMatrix& v, std::size_t pad, const Tolerance& tol) {
  return markov_pipeline(u, v, pad, tol).unitalized;
}

CpSemigroup cross_commuting_triple(const std::vector<CMatrix>& r, const std::vector<CMatrix>& s,
                                   const std::vector<CMatrix>& t, const Tolerance& tol) {
  const std::vector<const std::vector<CMatrix>*> families{&r, &s, &t};
  const char* names[] = {"r", "s", "t"};
  if (r.empty() || s.empty() || t.empty()) {
    throw Error(ErrorCode::InvalidArgument, "every Kraus family must be non-empty");
  }
  const auto d = r.front().rows();
  for (std::size_t f = 0; f < 3; ++f) {
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : *families[f]) {
      if (k.rows() != d || k.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, std::string("family ") + names[f] + " has mixed shapes");
      }
      sum += k * k.adjoint();
    }
    const CMatrix id = CMatrix::Identity(d, d);
    const double res = (sum - id).norm();
    if (res > tol.threshold(id.norm())) {
      std::ostringstream os;
      os << "family " << names[f] << ": ||sum k k^* - I|| = " << res;
      throw Error(ErrorCode::NotUnitalFamily, os.str());
    }
  }
  for (std::size_t f = 0; f < 3; ++f) {
    for (std::size_t g = f + 1; g < 3; ++g) {
      for (std::size_t i = 0; i < families[f]->size(); ++i) {
        for (std::size_t j = 0; j < families[g]->size(); ++j) {
          const CMatrix& a = (*families[f])[i];
          const CMatrix& b = (*families[g])[j];
          const CMatrix ab = a * b;
          const double res = (ab - b * a).norm();
          if (res > tol.threshold(ab.norm())) {
            std::ostringstream os;
            os << names[f] << "[" << i << "] and " << names[g] << "[" << j
               << "] do not commute (residual " << res << ")";
            throw Error(ErrorCode::CrossCommutationFailure, os.str());
          }
        }
      }
    }
  }
  return CpSemigroup::from_generators({CpMap(r), CpMap(s), CpMap(t)}, tol);
}

DilationCertificate schaffer_truncated(const CMatrix& t, std::size_t n, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw Error(ErrorCode::NonSquare, "contraction is not square");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  const double norm = spectral_norm(t);
  if (norm > 1.0 + tol.threshold(1.0)) {
    std::ostringstream os;
    os << "operator norm " << norm << " exceeds 1";
    throw Error(ErrorCode::NotContraction, os.str());
  }
  const auto d = t.rows();
  const CMatrix defect_sq = CMatrix::Identity(d, d) - t.adjoint() * t;
  const CMatrix defect = psd_sqrt(defect_sq);
  // Rank is read off I - t^*t rather than its square root, which would lift
  // rounding noise of size eps to sqrt(eps) and give isometries a defect space.
  const auto spec = hermitian_eigen(defect_sq);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] > tol.threshold(1.0)) keep.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  CMatrix range(d, r);
  for (Eigen::Index i = 0; i < r; ++i) range.col(i) = spec.vectors.col(keep[static_cast<std::size_t>(i)]);

  const auto slots = static_cast<Eigen::Index>(n);
  const Eigen::Index k = d + r * slots;
  CMatrix v = CMatrix::Zero(k, k);
  v.topLeftCorner(d, d) = t;
  if (r > 0) {
    v.block(d, 0, r, d) = range.adjoint() * defect;
    for (Eigen::Index s = 1; s < slots; ++s) {
      v.block(d + s * r, d + (s - 1) * r, r, r) = CMatrix::Identity(r, r);
    }
  }
  CMatrix embed = CMatrix::Zero(k, d);
  embed.topRows(d) = CMatrix::Identity(d, d);
  return make_certificate(std::move(embed), {Endomap::conjugation(v)}, MultiIndex::uniform(1, n));
}

std::vector<CMatrix> minimal_subspace(const DilationCertificate& cert, const Tolerance& tol) {
  cert.validate();
  for (std::size_t i = 0; i < cert.theta.size(); ++i) {
    if (!cert.theta[i].has_kraus() || cert.theta[i].kraus().size() != 1) {
      throw Error(ErrorCode::NotConjugationForm,
                  "theta generator " + std::to_string(i) + " is not conjugation by a single operator");
    }
  }
  SpanBuilder span(cert.k_dim, 1);
  for (const auto& s : box_indices(cert.horizon)) {
    CMatrix x = cert.embed;
    for (std::size_t j = cert.theta.size(); j-- > 0;) {
      for (std::size_t rep = 0; rep < s[j]; ++rep) x = cert.theta[j].kraus().front() * x;
    }
    for (Eigen::Index c = 0; c < x.cols(); ++c) span.try_add(x.col(c), tol.abs);
    if (span.complete()) break;
  }
  return span.basis();
}

Stinespring stinespring(const CpMap& t, const Tolerance& tol) {
  std::vector<CMatrix> kraus;
  try {
    kraus = kraus_from_choi(t.choi(), tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPsd) throw Error(ErrorCode::NotCp, e.what());
    throw;
  }
  for (auto& k : kraus) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    k.cwiseAbs().maxCoeff(&r, &c);
    const double mag = std::abs(k(r, c));
    if (mag > 0.0) k *= std::conj(k(r, c)) / mag;
  }
  const auto d = static_cast<Eigen::Index>(t.dim());
  const auto m = static_cast<Eigen::Index>(kraus.size());
  CMatrix v = CMatrix::Zero(d * m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const CMatrix ks = kraus[static_cast<std::size_t>(i)].adjoint();
    for (Eigen::Index h = 0; h < d; ++h) v.row(h * m + i) = ks.row(h);
  }
  return {std::move(v), static_cast<std::size_t>(m)};
}

double stinespring_residual(const CpMap& t, const Stinespring& s) {
  const auto d = t.dim();
  const CMatrix id_m = CMatrix::Identity(s.multiplicity, s.multiplicity);
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const CMatrix e = matrix_unit(d, d, a, b);
      worst = std::max(worst, (t.apply(e) - s.v.adjoint() * kron(e, id_m) * s.v).norm());
    }
  }
  return worst;
}

DilationCertificate tower_truncated(const CpMap& t, std::size_t n, const Tolerance& tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  const MapClass cls = classify(t, tol);
  if (!cls.is_cp) throw Error(ErrorCode::NotCp, "map is not completely positive");
  if (!cls.is_unital) throw Error(ErrorCode::NotUnital, "tower construction needs a unital map");

  const Stinespring st = stinespring(t, tol);
  const auto d = static_cast<Eigen::Index>(t.dim());
  const auto m = static_cast<Eigen::Index>(st.multiplicity);

  // Unitary extension of V on H (x) C^m with column h*m + 0 equal to V e_h.
  const Eigen::Index dm = d * m;
  CMatrix u(dm, dm);
  const auto comp = hermitian_eigen(CMatrix::Identity(dm, dm) - st.v * st.v.adjoint());
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index i = 0; i < comp.values.size(); ++i) {
    if (comp.values[i] > 0.5) free_cols.push_back(i);
  }
  if (static_cast<Eigen::Index>(free_cols.size()) != dm - d) {
    throw Error(ErrorCode::NotUnital, "Stinespring operator is not an isometry");
  }
  std::size_t next = 0;
  for (Eigen::Index h = 0; h < d; ++h) {
    u.col(h * m) = st.v.col(h);
    for (Eigen::Index e = 1; e < m; ++e) u.col(h * m + e) = comp.vectors.col(free_cols[next++]);
  }

  // Basis index of h (x) e_1 (x) ... (x) e_N: h * m^N + e_1 * m^{N-1} + ... + e_N.
  const auto tail = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(m), n - 1));
  const Eigen::Index block = m * tail;
  const Eigen::Index k = d * block;
  std::vector<CMatrix> a(static_cast<std::size_t>(m), CMatrix::Zero(k, k));
  for (Eigen::Index h = 0; h < d; ++h) {
    for (Eigen::Index e1 = 0; e1 < m; ++e1) {
      for (Eigen::Index rest = 0; rest < tail; ++rest) {
        const Eigen::Index col = h * block + e1 * tail + rest;
        const Eigen::Index shifted = rest * m;  // slots 2..N move to 1..N-1, slot N = e_0
        for (Eigen::Index h2 = 0; h2 < d; ++h2) {
          for (Eigen::Index f = 0; f < m; ++f) {
            a[static_cast<std::size_t>(f)](h2 * block + shifted, col) = u(h2 * m + f, h * m + e1);
          }
        }
      }
    }
  }
  std::vector<CMatrix> ops;
  ops.reserve(a.size());
  for (const auto& af : a) ops.push_back(af.adjoint());

  CMatrix embed = CMatrix::Zero(k, d);
  for (Eigen::Index h = 0; h < d; ++h) embed(h * block, h) = 1.0;
  return make_certificate(std::move(embed), {Endomap::conjugation(std::move(ops))}, MultiIndex::uniform(1, n));
}

VerificationReport tower_subcorner_report(const DilationCertificate& cert, std::size_t multiplicity,
                                          const Tolerance& tol) {
  if (cert.theta.size() != 1 || !cert.theta.front().has_kraus() || multiplicity == 0 ||
      cert.k_dim % multiplicity != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a tower certificate with slot dimension " +
                                                std::to_string(multiplicity));
  }
  VerificationReport report("tower_subcorner");
  const auto k = cert.k_dim;
  CMatrix p = CMatrix::Zero(k, k);
  for (std::size_t i = 0; i < k; i += multiplicity) p(i, i) = 1.0;
  const auto& ops = cert.theta.front().kraus();
  // theta(x) theta(y) = sum v_f x A_f A_g^* y v_g^*; on the sub-corner this is
  // theta(x P y) iff A_f A_g^* = delta_fg P.
  double worst = 0.0;
  for (std::size_t f = 0; f < ops.size(); ++f) {
    for (std::size_t g = 0; g < ops.size(); ++g) {
      const CMatrix prod = ops[f].adjoint() * ops[g];
      worst = std::max(worst, (f == g ? CMatrix(prod - p) : prod).norm());
    }
  }
  report.add("A_f A_g^* = delta_fg P", worst, tol.threshold(p.norm()));
  const CMatrix id = CMatrix::Identity(k, k);
  report.add("theta_unital", (cert.theta.front().apply(id) - id).norm(), tol.threshold(id.norm()));
  report.note("theta(x) theta(y) = theta(x P y) with P the projection onto slot N = e_0; "
              "theta is multiplicative on P B(K) P");
  return report;
}

}  // namespace cpdil
