#include "cpdil/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

// ---------------------------------------------------------------------------
// Endomap
// ---------------------------------------------------------------------------

Endomap Endomap::conjugation(std::vector<CMatrix> ops) {
  if (ops.empty()) throw Error(ErrorCode::DimensionMismatch, "empty operator family");
  Endomap e;
  e.out_dim_ = static_cast<std::size_t>(ops.front().rows());
  e.in_dim_ = static_cast<std::size_t>(ops.front().cols());
  for (const auto& v : ops) {
    if (static_cast<std::size_t>(v.rows()) != e.out_dim_ ||
        static_cast<std::size_t>(v.cols()) != e.in_dim_) {
      throw Error(ErrorCode::DimensionMismatch, "operator family has mixed shapes");
    }
  }
  e.kraus_ = std::move(ops);
  return e;
}

Endomap Endomap::from_superop(CMatrix superop, std::size_t in_dim, std::size_t out_dim) {
  if (static_cast<std::size_t>(superop.rows()) != out_dim * out_dim ||
      static_cast<std::size_t>(superop.cols()) != in_dim * in_dim || in_dim == 0 || out_dim == 0) {
    std::ostringstream os;
    os << "superoperator is " << superop.rows() << "x" << superop.cols() << ", expected "
       << out_dim * out_dim << "x" << in_dim * in_dim;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  Endomap e;
  e.in_dim_ = in_dim;
  e.out_dim_ = out_dim;
  e.superop_ = std::move(superop);
  return e;
}

Endomap Endomap::from_superop(CMatrix superop) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(superop.rows()))));
  return from_superop(std::move(superop), n, n);
}

CMatrix Endomap::superop() const {
  if (!has_kraus()) return superop_;
  CMatrix s = CMatrix::Zero(out_dim_ * out_dim_, in_dim_ * in_dim_);
  for (const auto& v : kraus_) s += kron(v.conjugate(), v);
  return s;
}

CMatrix Endomap::apply(const CMatrix& b) const {
  if (static_cast<std::size_t>(b.rows()) != in_dim_ || static_cast<std::size_t>(b.cols()) != in_dim_) {
    std::ostringstream os;
    os << "argument is " << b.rows() << "x" << b.cols() << ", map expects " << in_dim_ << "x" << in_dim_;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!has_kraus()) return unvec(superop_ * vec(b), out_dim_, out_dim_);
  CMatrix out = CMatrix::Zero(out_dim_, out_dim_);
  for (const auto& v : kraus_) out.noalias() += v * b * v.adjoint();
  return out;
}

CMatrix Endomap::choi() const {
  const auto n = static_cast<Eigen::Index>(in_dim_);
  const auto m = static_cast<Eigen::Index>(out_dim_);
  CMatrix c = CMatrix::Zero(n * m, n * m);
  if (has_kraus()) {
    for (const auto& v : kraus_) {
      const CVector x = vec(v);
      c.noalias() += x * x.adjoint();
    }
    return c;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c.block(i * m, j * m, m, m) = unvec(superop_.col(j * n + i), out_dim_, out_dim_);
    }
  }
  return c;
}

Endomap compose(const Endomap& outer, const Endomap& inner) {
  if (outer.in_dim() != inner.out_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot compose maps with incompatible dimensions");
  }
  if (outer.has_kraus() && inner.has_kraus()) {
    std::vector<CMatrix> ops;
    ops.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& u : outer.kraus()) {
      for (const auto& v : inner.kraus()) ops.push_back(u * v);
    }
    return Endomap::conjugation(std::move(ops));
  }
  return Endomap::from_superop(outer.superop() * inner.superop(), inner.in_dim(), outer.out_dim());
}

Endomap compress(const Endomap& e, const CMatrix& c) {
  if (static_cast<std::size_t>(c.rows()) != e.out_dim() || e.in_dim() != e.out_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "compression isometry does not match the map");
  }
  if (e.has_kraus()) {
    std::vector<CMatrix> ops;
    ops.reserve(e.kraus().size());
    for (const auto& v : e.kraus()) ops.push_back(c.adjoint() * v * c);
    return Endomap::conjugation(std::move(ops));
  }
  const CMatrix left = kron(c.transpose(), c.adjoint());
  const CMatrix right = kron(c.conjugate(), c);
  const auto small = static_cast<std::size_t>(c.cols());
  return Endomap::from_superop(left * e.superop() * right, small, small);
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

void DilationCertificate::validate() const {
  if (static_cast<std::size_t>(embed.rows()) != k_dim || static_cast<std::size_t>(embed.cols()) != h_dim) {
    std::ostringstream os;
    os << "embed is " << embed.rows() << "x" << embed.cols() << ", expected " << k_dim << "x" << h_dim;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (h_dim == 0 || k_dim < h_dim) {
    throw Error(ErrorCode::DimensionMismatch, "need 0 < h_dim <= k_dim");
  }
  if (algebra.ambient_dim() != k_dim) {
    throw Error(ErrorCode::DimensionMismatch, "algebra ambient dimension differs from k_dim");
  }
  if (theta.empty()) throw Error(ErrorCode::ArityMismatch, "certificate has no theta generators");
  if (horizon.size() != theta.size()) {
    throw Error(ErrorCode::ArityMismatch, "horizon length " + std::to_string(horizon.size()) +
                                              " differs from generator count " +
                                              std::to_string(theta.size()));
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i].in_dim() != k_dim || theta[i].out_dim() != k_dim) {
      throw Error(ErrorCode::DimensionMismatch, "theta generator " + std::to_string(i) +
                                                    " does not act on M_k");
    }
  }
  const double iso = (embed.adjoint() * embed - CMatrix::Identity(h_dim, h_dim)).norm();
  if (iso > 1e-9 * std::max<double>(1.0, std::sqrt(static_cast<double>(h_dim)))) {
    std::ostringstream os;
    os << "embed is not an isometry (residual " << iso << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

Endomap DilationCertificate::theta_at(const MultiIndex& s) const {
  if (s.size() != theta.size()) throw Error(ErrorCode::ArityMismatch, "index " + s.str());
  Endomap out = Endomap::conjugation(CMatrix(CMatrix::Identity(k_dim, k_dim)));
  for (std::size_t j = 0; j < theta.size(); ++j) {
    for (std::size_t r = 0; r < s[j]; ++r) out = compose(out, theta[j]);
  }
  return out;
}

CMatrix DilationCertificate::apply(const MultiIndex& s, const CMatrix& b) const {
  if (s.size() != theta.size()) throw Error(ErrorCode::ArityMismatch, "index " + s.str());
  CMatrix x = b;
  for (std::size_t j = theta.size(); j-- > 0;) {
    for (std::size_t r = 0; r < s[j]; ++r) x = theta[j].apply(x);
  }
  return x;
}

DilationCertificate make_certificate(CMatrix embed, std::vector<Endomap> theta, MultiIndex horizon,
                                     std::optional<MatrixStarAlgebra> algebra) {
  DilationCertificate cert;
  cert.k_dim = static_cast<std::size_t>(embed.rows());
  cert.h_dim = static_cast<std::size_t>(embed.cols());
  cert.embed = std::move(embed);
  cert.algebra = algebra ? std::move(*algebra) : MatrixStarAlgebra::full(cert.k_dim);
  cert.theta = std::move(theta);
  cert.horizon = std::move(horizon);
  cert.validate();
  return cert;
}

namespace {

// theta_s(x) for every s in the box, using theta_s = theta_j o theta_{s - e_j}
// with j the first nonzero coordinate (the outermost canonical factor).
std::map<MultiIndex, CMatrix> box_images(const DilationCertificate& cert, const CMatrix& x) {
  std::map<MultiIndex, CMatrix> out;
  for (const auto& s : box_indices(cert.horizon)) {
    if (s.is_zero()) {
      out.emplace(s, x);
      continue;
    }
    std::size_t j = 0;
    while (s[j] == 0) ++j;
    std::vector<std::size_t> prev(s.components());
    --prev[j];
    out.emplace(s, cert.theta[j].apply(out.at(MultiIndex(std::move(prev)))));
  }
  return out;
}

// W^* theta_s(.) W for one s. With operator-sum generators it keeps the
// compressed products X_J = W^* v_J (h x k); otherwise the dense superoperator.
class CompressedTheta {
 public:
  CompressedTheta(const DilationCertificate& cert, std::vector<CMatrix> x)
      : cert_(&cert), x_(std::move(x)) {
    const auto k = static_cast<Eigen::Index>(cert.k_dim);
    const auto h = static_cast<Eigen::Index>(cert.h_dim);
    // z_[a] = [X_1 e_a, ..., X_J e_a]
    z_.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index a = 0; a < k; ++a) {
      CMatrix z(h, static_cast<Eigen::Index>(x_.size()));
      for (std::size_t j = 0; j < x_.size(); ++j) z.col(static_cast<Eigen::Index>(j)) = x_[j].col(a);
      z_.push_back(std::move(z));
    }
    for (const auto& xj : x_) y_.push_back(xj * cert.embed);
  }
  CompressedTheta(const DilationCertificate& cert, CMatrix superop)
      : cert_(&cert), superop_(std::move(superop)) {}

  bool sparse() const { return superop_.size() == 0; }

  CMatrix image(const CMatrix& b) const {
    if (!sparse()) {
      const CMatrix full = unvec(superop_ * vec(b), cert_->k_dim, cert_->k_dim);
      return cert_->embed.adjoint() * full * cert_->embed;
    }
    const auto h = static_cast<Eigen::Index>(cert_->h_dim);
    CMatrix out = CMatrix::Zero(h, h);
    for (const auto& xj : x_) out.noalias() += xj * b * xj.adjoint();
    return out;
  }

  // W^* theta_s(W a W^*) W
  CMatrix corner(const CMatrix& a) const {
    if (!sparse()) return image(cert_->embed * a * cert_->embed.adjoint());
    const auto h = static_cast<Eigen::Index>(cert_->h_dim);
    CMatrix out = CMatrix::Zero(h, h);
    for (const auto& yj : y_) out.noalias() += yj * a * yj.adjoint();
    return out;
  }

  // Factor Z_a with W^* theta_s(E_ab) W = Z_a Z_b^*; only for operator-sum form.
  const CMatrix& unit_factor(std::size_t a) const { return z_[a]; }

 private:
  const DilationCertificate* cert_;
  std::vector<CMatrix> x_;
  std::vector<CMatrix> y_;
  std::vector<CMatrix> z_;
  CMatrix superop_;
};

class ThetaTable {
 public:
  explicit ThetaTable(const DilationCertificate& cert) : cert_(cert) {
    sparse_ = std::all_of(cert.theta.begin(), cert.theta.end(),
                          [](const Endomap& e) { return e.has_kraus(); });
  }

  const CompressedTheta& at(const MultiIndex& s) {
    auto it = table_.find(s);
    if (it != table_.end()) return it->second;
    if (sparse_) {
      return table_.emplace(s, CompressedTheta(cert_, ops(s))).first->second;
    }
    return table_.emplace(s, CompressedTheta(cert_, cert_.theta_at(s).superop())).first->second;
  }

 private:
  // X_J = W^* v_J over the Kraus products of theta_s, built as X_{s-e_j} v
  // with j the last nonzero coordinate (innermost canonical factor).
  const std::vector<CMatrix>& ops(const MultiIndex& s) {
    auto it = ops_.find(s);
    if (it != ops_.end()) return it->second;
    std::vector<CMatrix> out;
    if (s.is_zero()) {
      out.push_back(cert_.embed.adjoint());
    } else {
      std::size_t j = s.size();
      while (s[j - 1] == 0) --j;
      --j;
      std::vector<std::size_t> prev(s.components());
      --prev[j];
      const auto& base = ops(MultiIndex(std::move(prev)));
      out.reserve(base.size() * cert_.theta[j].kraus().size());
      for (const auto& x : base) {
        for (const auto& v : cert_.theta[j].kraus()) out.push_back(x * v);
      }
    }
    return ops_.emplace(s, std::move(out)).first->second;
  }

  const DilationCertificate& cert_;
  bool sparse_ = true;
  std::map<MultiIndex, std::vector<CMatrix>> ops_;
  std::map<MultiIndex, CompressedTheta> table_;
};

void check_compatible(const DilationCertificate& cert, const CpSemigroup& g) {
  cert.validate();
  if (cert.h_dim != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "certificate h_dim " + std::to_string(cert.h_dim) +
                                                  " differs from semigroup dimension " +
                                                  std::to_string(g.dim()));
  }
  if (cert.theta.size() != g.arity()) {
    throw Error(ErrorCode::ArityMismatch, "certificate has " + std::to_string(cert.theta.size()) +
                                              " generators, semigroup has " +
                                              std::to_string(g.arity()));
  }
}

// Isometry, corner and invariance checks shared by the dilation predicates.
void structure_checks(const DilationCertificate& cert, const Tolerance& tol, VerificationReport& report) {
  const auto d = static_cast<double>(cert.h_dim);
  const double iso = (cert.embed.adjoint() * cert.embed - CMatrix::Identity(cert.h_dim, cert.h_dim)).norm();
  report.add("embed_isometry", iso, 1e-12 * std::max(1.0, std::sqrt(d)));
  const CMatrix p = cert.projection();
  report.add("p_in_algebra", cert.algebra.distance(p), tol.threshold(p.norm()));
  if (cert.algebra.is_full()) return;
  double worst = 0.0;
  for (const auto& e : cert.theta) {
    for (std::size_t i = 0; i < cert.algebra.dimension(); ++i) {
      worst = std::max(worst, cert.algebra.distance(e.apply(cert.algebra.element(i))));
    }
  }
  report.add("theta_invariance", worst, tol.threshold(1.0));
}

std::vector<CMatrix> probe_matrices(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(normal(rng), normal(rng));
    }
    out.push_back(m / m.norm());
  }
  return out;
}

void theta_law_checks(const DilationCertificate& cert, const Tolerance& tol, VerificationReport& report) {
  if (cert.theta.size() == 1) {
    report.note("single theta generator: theta_s is defined as the s-th power, so the "
                "semigroup law of theta holds by construction");
    return;
  }
  std::vector<CMatrix> probes;
  if (cert.algebra.dimension() <= 256) {
    probes = cert.algebra.basis();
  } else {
    probes = probe_matrices(cert.k_dim, 8, 0x7e7a);
    report.note("theta commutation checked on 8 seeded random probes");
  }
  for (std::size_t i = 0; i < cert.theta.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.theta.size(); ++j) {
      double worst = 0.0;
      double scale = 0.0;
      for (const auto& b : probes) {
        const CMatrix ij = cert.theta[i].apply(cert.theta[j].apply(b));
        const CMatrix ji = cert.theta[j].apply(cert.theta[i].apply(b));
        worst = std::max(worst, (ij - ji).norm());
        scale = std::max(scale, ij.norm());
      }
      report.add("theta_law commute(" + std::to_string(i) + "," + std::to_string(j) + ")", worst,
                 tol.threshold(scale));
    }
  }
}

std::string horizon_note(const DilationCertificate& cert) {
  return "identities verified for all s <= horizon " + cert.horizon.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

VerificationReport endomorphism_check(const Endomap& e, const MatrixStarAlgebra& a, const Tolerance& tol) {
  if (e.in_dim() != a.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map domain " + std::to_string(e.in_dim()) +
                                                  " differs from algebra dimension " +
                                                  std::to_string(a.ambient_dim()));
  }
  VerificationReport report("endomorphism");
  const auto dim = a.dimension();

  std::vector<CMatrix> elems;
  std::vector<std::pair<CMatrix, CMatrix>> pairs;
  if (dim <= 400) {
    elems = a.basis();
  } else {
    report.note("algebra too large for exhaustive pairs; checked on 16 seeded random elements");
    std::mt19937_64 rng(0xe4d0);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 16; ++i) {
      CMatrix x = CMatrix::Zero(a.ambient_dim(), a.ambient_dim());
      if (a.is_full()) {
        x = probe_matrices(a.ambient_dim(), 1, rng())[0];
      } else {
        for (std::size_t j = 0; j < dim; ++j) x += Complex(normal(rng), normal(rng)) * a.element(j);
      }
      elems.push_back(x / x.norm());
    }
  }
  std::vector<CMatrix> images;
  images.reserve(elems.size());
  for (const auto& b : elems) images.push_back(e.apply(b));

  double star = 0.0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    star = std::max(star, (e.apply(elems[i].adjoint()) - images[i].adjoint()).norm());
  }
  report.add("star_preservation", star, tol.threshold(1.0));

  double mult = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      const CMatrix prod = images[i] * images[j];
      mult = std::max(mult, (e.apply(elems[i] * elems[j]) - prod).norm());
      scale = std::max(scale, prod.norm());
    }
  }
  report.add("multiplicativity", mult, tol.threshold(scale));

  if (e.has_kraus()) {
    report.add("complete_positivity", 0.0, tol.abs);
    report.note("operator-sum form is completely positive by construction");
  } else {
    const CMatrix c = e.choi();
    const double lowest = min_eigenvalue(c);
    report.add_min_eigenvalue("complete_positivity (choi min eigenvalue)", lowest, tol.threshold(c.norm()));
  }
  if (e.is_square()) {
    const CMatrix id = CMatrix::Identity(e.in_dim(), e.in_dim());
    std::ostringstream os;
    os << "unitality residual ||e(I) - I||_F = " << (e.apply(id) - id).norm();
    report.note(os.str());
  }
  return report;
}

VerificationReport is_dilation(const DilationCertificate& cert, const CpSemigroup& g, const Tolerance& tol) {
  check_compatible(cert, g);
  VerificationReport report("dilation");
  report.note(horizon_note(cert));
  structure_checks(cert, tol, report);
  ThetaTable table(cert);
  const auto basis = hermitian_matrix_basis(cert.h_dim);
  for (const auto& s : box_indices(cert.horizon)) {
    const CpMap ts = g.evaluate(s);
    const auto& comp = table.at(s);
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& a : basis) {
      const CMatrix expected = ts.apply(a);
      worst = std::max(worst, (expected - comp.corner(a)).norm());
      scale = std::max(scale, expected.norm());
    }
    report.add("dilation s=" + s.str(), worst, tol.threshold(scale));
  }
  theta_law_checks(cert, tol, report);
  return report;
}

VerificationReport is_strong_dilation(const DilationCertificate& cert, const CpSemigroup& g,
                                      const Tolerance& tol) {
  check_compatible(cert, g);
  VerificationReport report("strong_dilation");
  report.note(horizon_note(cert));
  structure_checks(cert, tol, report);
  ThetaTable table(cert);
  const auto k = cert.k_dim;
  const CMatrix wstar = cert.embed.adjoint();  // column a is W^* e_a
  for (const auto& s : box_indices(cert.horizon)) {
    const CpMap ts = g.evaluate(s);
    const auto& comp = table.at(s);
    double worst = 0.0;
    double scale = 0.0;
    if (cert.algebra.is_full() && comp.sparse()) {
      // Matrix units: T_s(w_a w_b^*) = R_a R_b^*, W^* theta_s(E_ab) W = Z_a Z_b^*.
      std::vector<CMatrix> r;
      r.reserve(k);
      for (std::size_t a = 0; a < k; ++a) {
        CMatrix ra(cert.h_dim, static_cast<Eigen::Index>(ts.kraus().size()));
        for (std::size_t i = 0; i < ts.kraus().size(); ++i) {
          ra.col(static_cast<Eigen::Index>(i)) = ts.kraus()[i] * wstar.col(static_cast<Eigen::Index>(a));
        }
        r.push_back(std::move(ra));
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          const CMatrix expected = r[a] * r[b].adjoint();
          const CMatrix got = comp.unit_factor(a) * comp.unit_factor(b).adjoint();
          worst = std::max(worst, (expected - got).norm());
          scale = std::max(scale, expected.norm());
        }
      }
    } else {
      for (std::size_t i = 0; i < cert.algebra.dimension(); ++i) {
        const CMatrix b = cert.algebra.element(i);
        const CMatrix expected = ts.apply(wstar * b * cert.embed);
        worst = std::max(worst, (expected - comp.image(b)).norm());
        scale = std::max(scale, expected.norm());
      }
    }
    report.add("strong s=" + s.str(), worst, tol.threshold(scale));
  }
  theta_law_checks(cert, tol, report);
  return report;
}

VerificationReport unital_equivalence_check(const DilationCertificate& cert, const CpSemigroup& g,
                                            const Tolerance& tol) {
  check_compatible(cert, g);
  if (!is_markov(g, tol)) throw Error(ErrorCode::NotMarkov, "semigroup has a non-unital generator");
  VerificationReport report("unital_equivalence");
  report.note(horizon_note(cert));
  const CMatrix p = cert.projection();
  const auto images = box_images(cert, p);
  ThetaTable table(cert);
  const CMatrix wstar = cert.embed.adjoint();
  const auto k = cert.k_dim;
  bool dominance_ok = true;
  for (const auto& s : box_indices(cert.horizon)) {
    const CMatrix& tp = images.at(s);
    const CMatrix diff = tp - p;
    const double lowest = min_eigenvalue(diff);
    const double floor = tol.threshold(tp.norm());
    report.add_min_eigenvalue("theta_s(p)>=p s=" + s.str(), lowest, floor);
    dominance_ok = dominance_ok && lowest >= -floor;

    const auto& comp = table.at(s);
    double worst = 0.0;
    double scale = 0.0;
    if (cert.algebra.is_full() && comp.sparse()) {
      // p E_ab p = W w_a w_b^* W^*, and W^* theta_s(W x W^*) W uses the corner form.
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          const CMatrix whole = comp.unit_factor(a) * comp.unit_factor(b).adjoint();
          const CMatrix cut = comp.corner(wstar.col(static_cast<Eigen::Index>(a)) *
                                          wstar.col(static_cast<Eigen::Index>(b)).adjoint());
          worst = std::max(worst, (whole - cut).norm());
          scale = std::max(scale, whole.norm());
        }
      }
    } else {
      for (std::size_t i = 0; i < cert.algebra.dimension(); ++i) {
        const CMatrix b = cert.algebra.element(i);
        const CMatrix whole = comp.image(b);
        worst = std::max(worst, (whole - comp.image(p * b * p)).norm());
        scale = std::max(scale, whole.norm());
      }
    }
    report.add("p_theta(b)_p=p_theta(pbp)_p s=" + s.str(), worst, tol.threshold(scale));
  }
  if (!dominance_ok) report.note("theta_s(p) >= p fails: the certificate is not a dilation of a Markov semigroup");

  const VerificationReport weak = is_dilation(cert, g, tol);
  const VerificationReport strong = is_strong_dilation(cert, g, tol);
  report.add_condition("dilation_implies_strong", !weak.overall() || strong.overall());
  if (weak.overall()) {
    report.add("strong_weak_residual_gap", std::abs(strong.max_residual() - weak.max_residual()),
               tol.threshold(1.0));
  } else {
    report.note("weak dilation check fails; implication holds vacuously");
  }
  report.append(weak, "weak: ");
  report.append(strong, "strong: ");
  return report;
}

MinimalityAssessment assess_minimality(const DilationCertificate& cert, const CpSemigroup& g,
                                       const Tolerance& tol) {
  check_compatible(cert, g);
  MinimalityAssessment out;
  out.report = VerificationReport("minimality");
  out.report.note(horizon_note(cert) + "; words use indices s <= horizon");
  const auto k = cert.k_dim;
  const auto d = cert.h_dim;

  std::vector<CMatrix> seeds;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const CMatrix corner = cert.embed * matrix_unit(d, d, a, b) * cert.embed.adjoint();
      for (auto& [s, img] : box_images(cert, corner)) seeds.push_back(std::move(img));
    }
  }

  const MatrixStarAlgebra generated = generated_star_algebra(seeds, k, tol);
  out.generated_dimension = generated.dimension();
  double gap = 0.0;
  if (generated.dimension() != cert.algebra.dimension()) {
    gap = 1.0;
  } else {
    gap = span_distance(generated, cert.algebra);
  }
  out.generated_matches = gap <= tol.threshold(1.0);
  out.report.add("generated_algebra_equals_B (dim " + std::to_string(generated.dimension()) + " vs " +
                     std::to_string(cert.algebra.dimension()) + ")",
                 gap, tol.threshold(1.0));

  // Route A: central carrier of p in B.
  const CMatrix id = CMatrix::Identity(k, k);
  double carrier_gap = 0.0;
  try {
    double rounding = 0.0;
    const CMatrix p = snap_projection(cert.projection(), 1e-6, &rounding);
    const CMatrix carrier = central_carrier(cert.algebra, p, tol);
    carrier_gap = (carrier - id).norm();
  } catch (const Error& e) {
    out.report.note(std::string("central carrier unavailable: ") + e.what());
    carrier_gap = id.norm();
  }
  out.carrier_is_identity = carrier_gap <= tol.threshold(id.norm());
  out.report.add("route_a central_carrier(p)=I", carrier_gap, tol.threshold(id.norm()));

  // Route B: closed span of words theta_{s1}(a_1)...theta_{sk}(a_k) h.
  SpanBuilder words(k, 1);
  for (std::size_t c = 0; c < d; ++c) words.try_add(cert.embed.col(static_cast<Eigen::Index>(c)), tol.abs);
  for (std::size_t i = 0; i < words.size() && !words.complete(); ++i) {
    const CMatrix v = words.element(i);
    for (const auto& x : seeds) {
      words.try_add(x * v, tol.abs);
      if (words.complete()) break;
    }
  }
  out.word_span_dimension = words.size();
  out.words_span_k = words.size() == k;
  out.report.add("route_b word_span_dim (" + std::to_string(words.size()) + " of " + std::to_string(k) + ")",
                 static_cast<double>(k - words.size()), 0.0);

  out.route_a = out.generated_matches && out.carrier_is_identity;
  out.route_b = out.generated_matches && out.words_span_k;
  out.report.note(std::string("route A (generated algebra + central carrier): ") +
                  (out.route_a ? "minimal" : "not minimal"));
  out.report.note(std::string("route B (generated algebra + word span): ") +
                  (out.route_b ? "minimal" : "not minimal"));
  return out;
}

VerificationReport is_minimal(const DilationCertificate& cert, const CpSemigroup& g, const Tolerance& tol) {
  MinimalityAssessment a = assess_minimality(cert, g, tol);
  a.report.add_condition("routes_agree", a.route_a == a.route_b);
  return std::move(a.report);
}

VerificationReport lemma_minBK_check(const DilationCertificate& cert, const CpSemigroup& g,
                                     const Tolerance& tol) {
  const MinimalityAssessment a = assess_minimality(cert, g, tol);
  if (!(a.route_a && a.route_b)) {
    throw Error(ErrorCode::NotMinimal, "certificate does not pass the minimality check");
  }
  VerificationReport report("minimal_full_algebra");
  const auto k = cert.k_dim;
  const auto d = cert.h_dim;
  const MatrixStarAlgebra comm = commutant(cert.algebra, tol);
  report.add("commutant_dimension-1", std::abs(static_cast<double>(comm.dimension()) - 1.0), 0.0);
  report.add("algebra_dimension-k^2",
             std::abs(static_cast<double>(cert.algebra.dimension()) - static_cast<double>(k * k)), 0.0);
  // Each commutant element compresses to a scalar on H (the qp in {0, p} dichotomy).
  double worst = 0.0;
  for (std::size_t i = 0; i < comm.dimension(); ++i) {
    const CMatrix c = cert.embed.adjoint() * comm.element(i) * cert.embed;
    const Complex mean = c.trace() / static_cast<double>(d);
    worst = std::max(worst, (c - mean * CMatrix::Identity(d, d)).norm());
  }
  report.add("commutant_compresses_to_scalars", worst, tol.threshold(1.0));
  return report;
}

CornerRestriction corner_restriction(const CpSemigroup& g, const CpSemigroup& gu,
                                     const DilationCertificate& cert_u, const Tolerance& tol) {
  const auto d = g.dim();
  if (gu.dim() != d + 1 || gu.arity() != g.arity()) {
    throw Error(ErrorCode::NotUnitalization, "unitalized semigroup must act on dimension " +
                                                 std::to_string(d + 1) + " with the same arity");
  }
  for (std::size_t j = 0; j < g.arity(); ++j) {
    const CpMap expected = unitalize_map(g.generator(j), tol);
    const double dist = superoperator_distance(expected, gu.generator(j));
    if (dist > tol.threshold(expected.choi().norm())) {
      std::ostringstream os;
      os << "generator " << j << " differs from the unitalization by " << dist;
      throw Error(ErrorCode::NotUnitalization, os.str());
    }
  }
  {
    const VerificationReport comp = compression_check(g, gu, 8, cert_u.horizon.size() == g.arity()
                                                                     ? cert_u.horizon
                                                                     : MultiIndex::uniform(g.arity(), 1),
                                                      tol);
    if (!comp.overall()) {
      throw Error(ErrorCode::NotUnitalization, "compression check failed at " + comp.first_failure()->name);
    }
  }
  const VerificationReport pre = is_dilation(cert_u, gu, tol);
  if (!pre.overall()) {
    throw Error(ErrorCode::NotADilation, "input certificate fails " + pre.first_failure()->name);
  }

  VerificationReport report("corner_restriction");
  report.note(horizon_note(cert_u));
  const auto kt = cert_u.k_dim;
  const CMatrix& wt = cert_u.embed;
  const CMatrix wq = wt.col(static_cast<Eigen::Index>(d));
  double q_round = 0.0;
  const CMatrix q = snap_projection(wq * wq.adjoint(), 1e-6, &q_round);
  report.add("q_spectral_rounding", q_round, 1e-6);
  const CMatrix id_t = CMatrix::Identity(kt, kt);

  // (2) q-dominance.
  const auto q_images = box_images(cert_u, q);
  for (const auto& [s, tq] : q_images) {
    if (s.is_zero()) continue;
    const double corner_res = (q * tq * q - q).norm();
    report.add("q_corner qtheta(q)q=q s=" + s.str(), corner_res, tol.threshold(q.norm()));
    const double lowest = min_eigenvalue(tq - q);
    const double floor = tol.threshold(tq.norm());
    report.add_min_eigenvalue("q_dominance theta(q)>=q s=" + s.str(), lowest, floor);
    if (lowest < -floor) {
      std::ostringstream os;
      os << "theta~_s(q) >= q fails at s=" << s.str() << " (min eigenvalue " << lowest << ")";
      throw Error(ErrorCode::NotADilation, os.str());
    }
  }

  // (3) K = range(1 - q), B = (1-q) B~ (1-q).
  const CMatrix one_minus_q = id_t - q;
  const auto spec = hermitian_eigen(one_minus_q);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] > 0.5) keep.push_back(i);
  }
  CMatrix c(kt, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) c.col(static_cast<Eigen::Index>(i)) = spec.vectors.col(keep[i]);
  const auto k = static_cast<std::size_t>(c.cols());

  std::optional<MatrixStarAlgebra> algebra;
  if (cert_u.algebra.is_full()) {
    algebra = MatrixStarAlgebra::full(k);
  } else {
    std::vector<CMatrix> cut;
    for (std::size_t i = 0; i < cert_u.algebra.dimension(); ++i) {
      cut.push_back(c.adjoint() * cert_u.algebra.element(i) * c);
    }
    algebra = MatrixStarAlgebra::from_spanning(k, cut, tol);
  }

  // (4) invariance of B under theta~.
  const auto inv_images = box_images(cert_u, one_minus_q);
  for (const auto& [s, img] : inv_images) {
    if (s.is_zero()) continue;
    double res = (q * img).norm();
    if (!cert_u.algebra.is_full()) {
      for (std::size_t i = 0; i < cert_u.algebra.dimension(); ++i) {
        const CMatrix b = one_minus_q * cert_u.algebra.element(i) * one_minus_q;
        const CMatrix tb = cert_u.apply(s, b);
        res = std::max(res, (tb - one_minus_q * tb * one_minus_q).norm());
      }
    }
    report.add("invariance theta(B) in B s=" + s.str(), res, tol.threshold(img.norm()));
  }

  // (5) theta = theta~ restricted to B; H embeds through the first d columns.
  std::vector<Endomap> theta;
  theta.reserve(cert_u.theta.size());
  for (const auto& e : cert_u.theta) theta.push_back(compress(e, c));
  CMatrix w = c.adjoint() * wt.leftCols(static_cast<Eigen::Index>(d));
  DilationCertificate out = make_certificate(std::move(w), std::move(theta), cert_u.horizon, std::move(algebra));

  // (6) coinvariance theta_s(1_B - p) <= 1_B - p.
  const CMatrix complement = CMatrix::Identity(k, k) - out.projection();
  for (const auto& [s, img] : box_images(out, complement)) {
    if (s.is_zero()) continue;
    const double lowest = min_eigenvalue(complement - img);
    report.add_min_eigenvalue("coinvariance theta(1-p)<=1-p s=" + s.str(), lowest, tol.threshold(img.norm()));
  }

  // (7) strong dilation identity for the original semigroup.
  report.append(is_strong_dilation(out, g, tol), "strong: ");
  return {std::move(out), std::move(report)};
}

}  // namespace cpdil
