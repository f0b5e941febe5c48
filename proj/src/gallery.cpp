#include "cpdil/gallery.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "cpdil/constructors.hpp"
#include "cpdil/error.hpp"
#include "cpdil/io.hpp"

namespace cpdil {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

// Export, re-import, compare generators in Choi norm.
void round_trip(const fs::path& path, const CpSemigroup& g, const std::vector<std::string>& names,
                VerificationReport& report, DemoOutcome& out) {
  save_semigroup(path, g, names);
  out.files.push_back(path);
  const SemigroupDocument back = load_semigroup(path);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    worst = std::max(worst, superoperator_distance(g.generator(i), back.semigroup.generator(i)));
  }
  report.add("round_trip " + path.filename().string(), worst, 1e-12);
}

void classify_checks(const CpSemigroup& g, const Tolerance& tol, VerificationReport& report, bool expect_unital) {
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const MapClass cls = classify(g.generator(i), tol);
    const std::string tag = "generator " + std::to_string(i) + " ";
    const double choi_scale = g.generator(i).choi().norm();
    report.add_min_eigenvalue(tag + "choi_min_eigenvalue", cls.residuals[0].value, tol.threshold(choi_scale));
    report.add_min_eigenvalue(tag + "contractive (I - T(I) min eigenvalue)", cls.residuals[2].value,
                              tol.threshold(1.0));
    if (expect_unital) {
      report.add(tag + "unital_residual", cls.residuals[1].value, tol.threshold(std::sqrt(g.dim())));
    } else {
      report.add_condition(tag + "non-unital", !cls.is_unital);
    }
  }
}

CMatrix random_contraction(std::size_t d, double norm, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CMatrix t(d, d);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = Complex(normal(rng), normal(rng));
  }
  return t * (norm / spectral_norm(t));
}

DemoOutcome demo_parrott(const fs::path& dir, const Tolerance& tol) {
  DemoOutcome out;
  VerificationReport& report = out.report;
  report = VerificationReport("demo parrott");
  const CMatrix u = pauli_x();
  const CMatrix v = pauli_z();
  const ContractionTuple tuple = parrott_contractions(u, v, tol);
  double products = 0.0;
  for (const auto& a : tuple.ops) {
    for (const auto& b : tuple.ops) products = std::max(products, (a * b).norm());
  }
  report.add("t_i t_j = 0", products, tol.abs);
  for (std::size_t i = 0; i < tuple.ops.size(); ++i) {
    report.add("||t_" + std::to_string(i) + "|| = 1", std::abs(spectral_norm(tuple.ops[i]) - 1.0), tol.threshold(1.0));
  }
  const double obstruction = obstruction_norm(u, v, tol);
  report.note("obstruction_norm = " + fmt(obstruction) + " (U = Pauli X, V = Pauli Z)");
  report.add("obstruction_norm = 2", std::abs(obstruction - 2.0), 1e-12);

  const CpSemigroup g = conjugation_triple(tuple, tol);
  classify_checks(g, tol, report, false);
  report.append(verify_semigroup_law(g, MultiIndex::uniform(3, 2), tol), "law: ");
  round_trip(dir / "parrott.semigroup.json", g, {"T1", "T2", "T3"}, report, out);
  return out;
}

DemoOutcome demo_markov6(const fs::path& dir, const Tolerance& tol) {
  DemoOutcome out;
  VerificationReport& report = out.report;
  report = VerificationReport("demo markov6");
  const CMatrix u = pauli_x();
  const CMatrix v = pauli_z();
  const MarkovPipeline p = markov_pipeline(u, v, 1, tol);
  report.add("base dimension = 5", std::abs(static_cast<double>(p.base.dim()) - 5.0), 0.0);
  report.add("unitalized dimension = 6", std::abs(static_cast<double>(p.unitalized.dim()) - 6.0), 0.0);
  report.add("generator count = 3", std::abs(static_cast<double>(p.unitalized.arity()) - 3.0), 0.0);
  classify_checks(p.base, tol, report, false);
  report.append(markov_report(p.unitalized, tol), "unitalized: ");
  report.add_condition("is_markov", is_markov(p.unitalized, tol));
  report.append(compression_check(p.base, p.unitalized, 20, MultiIndex::uniform(3, 2), tol), "");
  report.append(verify_semigroup_law(p.unitalized, MultiIndex::uniform(3, 2), tol), "law: ");
  const double obstruction = obstruction_norm(u, v, tol);
  report.note("obstruction_norm = " + fmt(obstruction) + " (U = Pauli X, V = Pauli Z)");
  report.add("obstruction_norm = 2", std::abs(obstruction - 2.0), 1e-12);
  report.note("Nonexistence of a minimal dilation for this Markov triple is cited, not verified. "
              "The base is a Parrott-type stand-in padded to dimension 5; whether it admits a "
              "dilation is not settled by this tool.");
  round_trip(dir / "markov6.semigroup.json", p.unitalized, {"T1", "T2", "T3"}, report, out);
  round_trip(dir / "markov6.base.semigroup.json", p.base, {"T1", "T2", "T3"}, report, out);
  return out;
}

DemoOutcome demo_schaffer(const fs::path& dir, const Tolerance& tol) {
  DemoOutcome out;
  VerificationReport& report = out.report;
  report = VerificationReport("demo schaffer");
  const CMatrix t = random_contraction(2, 0.8, 0x5c4a);
  const CpSemigroup g = CpSemigroup::from_generators({conjugation(t)}, tol);
  const DilationCertificate cert = schaffer_truncated(t, 4, tol);
  report.note("K = H (+) D^4 with dim K = " + std::to_string(cert.k_dim));
  report.append(is_dilation(cert, g, tol), "dilation: ");
  const auto span = minimal_subspace(cert, tol);
  report.add("minimal_subspace spans K (" + std::to_string(span.size()) + " of " + std::to_string(cert.k_dim) + ")",
             static_cast<double>(cert.k_dim - span.size()), 0.0);
  report.append(is_minimal(cert, g, tol), "minimal: ");
  round_trip(dir / "schaffer.semigroup.json", g, {"T"}, report, out);
  save_certificate(dir / "schaffer.certificate.json", cert);
  out.files.push_back(dir / "schaffer.certificate.json");
  return out;
}

DemoOutcome demo_tower(const fs::path& dir, const Tolerance& tol) {
  DemoOutcome out;
  VerificationReport& report = out.report;
  report = VerificationReport("demo tower");
  CMatrix half = CMatrix::Constant(1, 1, std::sqrt(0.5));
  const CpSemigroup g = CpSemigroup::from_generators({conjugation(half)}, tol);
  const CpSemigroup gu = unitalize(g, tol);
  const std::size_t depth = 2;
  const Stinespring st = stinespring(gu.generator(0), tol);
  const DilationCertificate cert_u = tower_truncated(gu.generator(0), depth, tol);
  report.note("tower depth " + std::to_string(depth) + ", slot dimension " + std::to_string(st.multiplicity) +
              ", dim K = " + std::to_string(cert_u.k_dim));
  report.add("stinespring identity", stinespring_residual(gu.generator(0), st), 1e-10);
  report.append(tower_subcorner_report(cert_u, st.multiplicity, tol), "tower: ");
  report.append(is_dilation(cert_u, gu, tol), "unitalized dilation: ");
  report.append(unital_equivalence_check(cert_u, gu, tol), "equivalence: ");
  const CornerRestriction cr = corner_restriction(g, gu, cert_u, tol);
  report.append(cr.report, "corner: ");

  round_trip(dir / "tower.base.semigroup.json", g, {"T"}, report, out);
  round_trip(dir / "tower.unitalized.semigroup.json", gu, {"T"}, report, out);
  save_certificate(dir / "tower.certificate.json", cert_u);
  save_certificate(dir / "tower.restricted.certificate.json", cr.certificate);
  out.files.push_back(dir / "tower.certificate.json");
  out.files.push_back(dir / "tower.restricted.certificate.json");
  return out;
}

DemoOutcome demo_cross(const fs::path& dir, const Tolerance& tol) {
  DemoOutcome out;
  VerificationReport& report = out.report;
  report = VerificationReport("demo cross");
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CMatrix y = CMatrix::Zero(2, 2);
  y(0, 1) = Complex(0.0, -1.0);
  y(1, 0) = Complex(0.0, 1.0);
  CMatrix hadamard(2, 2);
  hadamard << 1.0, 1.0, 1.0, -1.0;
  hadamard /= std::sqrt(2.0);
  auto on = [&](std::size_t slot, const CMatrix& a) {
    const CMatrix f0 = slot == 0 ? a : id2;
    const CMatrix f1 = slot == 1 ? a : id2;
    const CMatrix f2 = slot == 2 ? a : id2;
    return kron(kron(f0, f1), f2);
  };
  const std::vector<CMatrix> r{std::sqrt(0.5) * on(0, pauli_x()), std::sqrt(0.5) * on(0, pauli_z())};
  const std::vector<CMatrix> s{std::sqrt(0.3) * on(1, id2), std::sqrt(0.7) * on(1, y)};
  const std::vector<CMatrix> t{std::sqrt(0.6) * on(2, hadamard), std::sqrt(0.4) * on(2, pauli_x())};
  const CpSemigroup g = cross_commuting_triple(r, s, t, tol);
  report.append(markov_report(g, tol), "");
  report.add_condition("is_markov", is_markov(g, tol));
  report.append(verify_semigroup_law(g, MultiIndex::uniform(3, 2), tol), "law: ");
  report.note("cross-commuting Kraus families give a dilatable Markov triple (positive control)");
  round_trip(dir / "cross.semigroup.json", g, {"R", "S", "T"}, report, out);
  return out;
}

const std::vector<std::pair<std::string, std::function<DemoOutcome(const fs::path&, const Tolerance&)>>>&
registry() {
  static const std::vector<std::pair<std::string, std::function<DemoOutcome(const fs::path&, const Tolerance&)>>>
      demos{{"parrott", demo_parrott},
            {"markov6", demo_markov6},
            {"schaffer", demo_schaffer},
            {"tower", demo_tower},
            {"cross", demo_cross}};
  return demos;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

DemoOutcome run_demo(const std::string& name, const fs::path& out_dir, const Tolerance& tol) {
  for (const auto& [key, fn] : registry()) {
    if (key != name) continue;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
    DemoOutcome out = fn(out_dir, tol);
    const fs::path report_path = out_dir / (name + ".report.json");
    save_json(report_path, report_to_json(out.report));
    out.files.push_back(report_path);
    return out;
  }
  std::string known;
  for (const auto& n : demo_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::InvalidArgument, "unknown demo '" + name + "' (known: " + known + ")");
}

DemoOutcome export_gallery(const fs::path& out_dir, const Tolerance& tol) {
  DemoOutcome all;
  all.report = VerificationReport("gallery");
  for (const auto& name : demo_names()) {
    DemoOutcome one = run_demo(name, out_dir, tol);
    all.report.append(one.report, name + ": ");
    all.files.insert(all.files.end(), one.files.begin(), one.files.end());
  }
  return all;
}

}  // namespace cpdil
