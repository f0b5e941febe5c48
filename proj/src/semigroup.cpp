#include "cpdil/semigroup.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

MultiIndex MultiIndex::unit(std::size_t k, std::size_t i) {
  std::vector<std::size_t> c(k, 0);
  c.at(i) = 1;
  return MultiIndex(std::move(c));
}

bool MultiIndex::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::size_t v) { return v == 0; });
}

std::size_t MultiIndex::total() const {
  std::size_t n = 0;
  for (auto v : c_) n += v;
  return n;
}

bool MultiIndex::dominated_by(const MultiIndex& box) const {
  if (box.size() != size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] > box.c_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) {
    throw Error(ErrorCode::ArityMismatch, "adding multi-indices of lengths " +
                                              std::to_string(size()) + " and " +
                                              std::to_string(other.size()));
  }
  std::vector<std::size_t> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.c_[i];
  return MultiIndex(std::move(c));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

std::vector<MultiIndex> box_indices(const MultiIndex& box) {
  std::vector<MultiIndex> out;
  std::vector<std::size_t> cur(box.size(), 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = cur.size();
    while (i > 0) {
      --i;
      if (cur[i] < box[i]) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (cur.empty()) return out;
  }
}

CpSemigroup::CpSemigroup(std::vector<CpMap> generators)
    : generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {}

CpSemigroup CpSemigroup::unchecked(std::vector<CpMap> generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "semigroup needs a generator");
  const auto d = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != d) throw Error(ErrorCode::DimensionMismatch, "generators act on different dimensions");
  }
  return CpSemigroup(std::move(generators));
}

CpSemigroup CpSemigroup::from_generators(std::vector<CpMap> generators, const Tolerance& tol) {
  tol.validate();
  CpSemigroup out = unchecked(std::move(generators));
  const auto& gens = out.generators_;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const MapClass cls = classify(gens[i], tol);
    if (!cls.is_cp) throw Error(ErrorCode::NotCp, "generator " + std::to_string(i));
    if (!cls.is_contractive) {
      std::ostringstream os;
      os << "generator " << i << ": min eigenvalue of I - T(I) is " << cls.residuals[2].value;
      throw Error(ErrorCode::NotContractive, os.str());
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!commutes(gens[i], gens[j], tol)) {
        std::ostringstream os;
        os << "generators " << i << " and " << j << " do not commute (residual "
           << commutation_residual(gens[i], gens[j]) << ")";
        throw Error(ErrorCode::NotCommuting, os.str());
      }
    }
  }
  return out;
}

CpMap CpSemigroup::evaluate(const MultiIndex& s) const {
  if (s.size() != arity()) {
    throw Error(ErrorCode::ArityMismatch, "index " + s.str() + " for a semigroup over N^" +
                                              std::to_string(arity()));
  }
  if (s.is_zero()) return CpMap::identity(dim());
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->entries.find(s);
    if (it != cache_->entries.end()) return it->second;
  }
  // T_s = T_{s - e_j} o T_j with j the last nonzero coordinate, which keeps the
  // factors in ascending generator order.
  std::size_t j = s.size();
  while (j > 0 && s[j - 1] == 0) --j;
  --j;
  std::vector<std::size_t> prev(s.components());
  --prev[j];
  const MultiIndex rest(std::move(prev));
  CpMap value = rest.is_zero() ? generators_[j] : compose(evaluate(rest), generators_[j]);
  if (value.kraus().size() > dim() * dim()) value = value.compressed();

  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->entries.emplace(s, std::move(value)).first->second;
}

CpSemigroup from_generators(std::vector<CpMap> generators, const Tolerance& tol) {
  return CpSemigroup::from_generators(std::move(generators), tol);
}

CpMap evaluate(const CpSemigroup& g, const MultiIndex& s) { return g.evaluate(s); }

VerificationReport verify_semigroup_law(const CpSemigroup& g, const MultiIndex& box,
                                        const Tolerance& tol) {
  if (box.size() != g.arity()) {
    throw Error(ErrorCode::ArityMismatch, "box " + box.str() + " for arity " + std::to_string(g.arity()));
  }
  VerificationReport report("semigroup_law");
  report.note("semigroup law checked on the box s + t <= " + box.str());
  const auto indices = box_indices(box);
  std::map<MultiIndex, CMatrix> superops;
  auto superop = [&](const MultiIndex& s) -> const CMatrix& {
    auto it = superops.find(s);
    if (it == superops.end()) it = superops.emplace(s, g.evaluate(s).superoperator()).first;
    return it->second;
  };
  for (const auto& s : indices) {
    for (const auto& t : indices) {
      const MultiIndex sum = s + t;
      if (!sum.dominated_by(box)) continue;
      const CMatrix& whole = superop(sum);
      const double res = (whole - superop(s) * superop(t)).norm();
      report.add("law s=" + s.str() + " t=" + t.str(), res, tol.threshold(whole.norm()));
    }
  }
  return report;
}

bool is_markov(const CpSemigroup& g, const Tolerance& tol) {
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [&](const CpMap& t) { return classify(t, tol).is_unital; });
}

VerificationReport markov_report(const CpSemigroup& g, const Tolerance& tol) {
  VerificationReport report("markov");
  const CMatrix id = CMatrix::Identity(g.dim(), g.dim());
  for (std::size_t j = 0; j < g.arity(); ++j) {
    const CpMap& t = g.generator(j);
    const std::string tag = "generator " + std::to_string(j) + " ";
    report.add_min_eigenvalue(tag + "choi_min_eigenvalue", min_eigenvalue(t.choi()), tol.threshold(t.choi().norm()));
    report.add(tag + "unital_residual", (t.apply(id) - id).norm(), tol.threshold(id.norm()));
  }
  for (std::size_t i = 0; i < g.arity(); ++i) {
    for (std::size_t j = i + 1; j < g.arity(); ++j) {
      const CMatrix si = g.generator(i).superoperator();
      const CMatrix sj = g.generator(j).superoperator();
      const CMatrix ij = si * sj;
      report.add("commute(" + std::to_string(i) + "," + std::to_string(j) + ")", (ij - sj * si).norm(),
                 tol.threshold(ij.norm()));
    }
  }
  return report;
}

CpMap unitalize_map(const CpMap& t, const Tolerance& tol) {
  const auto d = t.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix defect = id - t.apply(id);
  const double floor = -tol.threshold(defect.norm());
  const double lowest = min_eigenvalue(defect);
  if (lowest < floor) {
    std::ostringstream os;
    os << "I - T(I) has eigenvalue " << lowest << " below " << floor;
    throw Error(ErrorCode::NotContractive, os.str());
  }
  std::vector<CMatrix> ops;
  ops.reserve(t.kraus().size() + d + 1);
  for (const auto& k : t.kraus()) ops.push_back(direct_sum(k, CMatrix::Zero(1, 1)));
  const CMatrix root = direct_sum(psd_sqrt(defect), CMatrix::Identity(1, 1));
  for (std::size_t j = 0; j <= d; ++j) {
    CMatrix w = CMatrix::Zero(d + 1, d + 1);
    w.col(static_cast<Eigen::Index>(d)) = root.col(static_cast<Eigen::Index>(j));
    ops.push_back(std::move(w));
  }
  return CpMap(std::move(ops));
}

CpSemigroup unitalize(const CpSemigroup& g, const Tolerance& tol) {
  std::vector<CpMap> gens;
  gens.reserve(g.arity());
  for (const auto& t : g.generators()) gens.push_back(unitalize_map(t, tol));
  return CpSemigroup::from_generators(std::move(gens), tol);
}

VerificationReport compression_check(const CpSemigroup& g, const CpSemigroup& gu,
                                     std::size_t samples, const MultiIndex& box,
                                     const Tolerance& tol, std::uint64_t seed) {
  if (gu.dim() != g.dim() + 1) {
    throw Error(ErrorCode::DimensionMismatch, "unitalized semigroup has dimension " +
                                                  std::to_string(gu.dim()) + ", expected " +
                                                  std::to_string(g.dim() + 1));
  }
  if (gu.arity() != g.arity() || box.size() != g.arity()) {
    throw Error(ErrorCode::ArityMismatch, "semigroups or box have different arity");
  }
  const auto d = static_cast<Eigen::Index>(g.dim());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CMatrix> probes;
  probes.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    CMatrix b(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) b(r, c) = Complex(normal(rng), normal(rng));
    }
    probes.push_back(0.5 * (b + b.adjoint()));
  }

  VerificationReport report("compression");
  report.note("corner compression checked with " + std::to_string(samples) +
              " Hermitian samples per index, s <= " + box.str());
  const CMatrix zero = CMatrix::Zero(1, 1);
  for (const auto& s : box_indices(box)) {
    const CpMap ts = g.evaluate(s);
    const CpMap tus = gu.evaluate(s);
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& b : probes) {
      const CMatrix expected = ts.apply(b);
      const CMatrix lifted = tus.apply(direct_sum(b, zero));
      worst = std::max(worst, (expected - lifted.topLeftCorner(d, d)).norm());
      scale = std::max(scale, expected.norm());
    }
    report.add("compression s=" + s.str(), worst, tol.threshold(scale));
  }
  return report;
}

}  // namespace cpdil
