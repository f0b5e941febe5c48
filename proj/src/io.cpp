#include "cpdil/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cpdil/error.hpp"

namespace cpdil {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& field(const json& obj, const std::string& pointer, const char* key) {
  if (!obj.is_object()) schema_error(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(pointer, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t parse_count(const json& j, const std::string& pointer) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) schema_error(pointer, "expected a non-negative integer");
  if (j.is_number_integer() && j.get<long long>() < 0) schema_error(pointer, "expected a non-negative integer");
  return j.get<std::size_t>();
}

double parse_real(const json& j, const std::string& pointer) {
  if (!j.is_number()) schema_error(pointer, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema_error(pointer, "expected a finite number");
  return x;
}

Complex parse_complex(const json& j, const std::string& pointer) {
  if (!j.is_array() || j.size() != 2) schema_error(pointer, "complex number must be [re, im]");
  return {parse_real(j[0], pointer + "/0"), parse_real(j[1], pointer + "/1")};
}

CMatrix parse_matrix(const json& j, const std::string& pointer, const std::string& context) {
  const std::string prefix = context.empty() ? "" : context + ": ";
  if (!j.is_array() || j.empty()) schema_error(pointer, prefix + "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) schema_error(pointer + "/0", prefix + "row must be a non-empty array");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = pointer + "/" + std::to_string(r);
    if (!j[r].is_array()) schema_error(rp, prefix + "row must be an array");
    if (j[r].size() != cols) {
      schema_error(rp, prefix + "row has " + std::to_string(j[r].size()) + " entries, expected " +
                           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_complex(j[r][c], rp + "/" + std::to_string(c));
    }
  }
  return m;
}

void require_shape(const CMatrix& m, std::size_t rows, std::size_t cols, const std::string& pointer,
                   const std::string& context) {
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
    std::ostringstream os;
    if (!context.empty()) os << context << ": ";
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << rows << "x" << cols;
    schema_error(pointer, os.str());
  }
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, "/: " + path.string() + " is not valid JSON (" + e.what() + ")");
  }
}

}  // namespace

SemigroupDocument parse_semigroup(const json& doc, const std::optional<Tolerance>& tol) {
  const std::size_t dim = parse_count(field(doc, "", "dim"), "/dim");
  if (dim == 0) schema_error("/dim", "dimension must be positive");

  std::optional<Tolerance> file_tol;
  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    Tolerance parsed;
    parsed.abs = parse_real(field(t, "/tolerance", "abs"), "/tolerance/abs");
    parsed.rel = parse_real(field(t, "/tolerance", "rel"), "/tolerance/rel");
    if (parsed.abs < 0.0 || parsed.rel < 0.0) schema_error("/tolerance", "tolerances must be non-negative");
    file_tol = parsed;
  }
  const Tolerance use = tol ? *tol : file_tol.value_or(Tolerance{});

  const json& gens = field(doc, "", "generators");
  if (!gens.is_array() || gens.empty()) schema_error("/generators", "expected a non-empty array");

  std::vector<std::string> names;
  std::vector<CpMap> maps;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string gp = "/generators/" + std::to_string(i);
    const json& name_j = field(gens[i], gp, "name");
    if (!name_j.is_string()) schema_error(gp + "/name", "expected a string");
    const std::string name = name_j.get<std::string>();
    if (!seen.insert(name).second) schema_error(gp + "/name", "duplicate generator name '" + name + "'");
    const std::string context = "generator '" + name + "'";
    const json& kraus = field(gens[i], gp, "kraus");
    if (!kraus.is_array() || kraus.empty()) schema_error(gp + "/kraus", context + ": expected a non-empty array");
    std::vector<CMatrix> ops;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      const std::string kp = gp + "/kraus/" + std::to_string(k);
      CMatrix m = parse_matrix(kraus[k], kp, context);
      require_shape(m, dim, dim, kp, context);
      ops.push_back(std::move(m));
    }
    names.push_back(name);
    maps.emplace_back(std::move(ops));
  }

  for (std::size_t i = 0; i < maps.size(); ++i) {
    const MapClass cls = classify(maps[i], use);
    if (!cls.is_cp) throw Error(ErrorCode::NotCp, "generator '" + names[i] + "' is not completely positive");
    if (!cls.is_contractive) {
      std::ostringstream os;
      os << "generator '" << names[i] << "': I - T(I) has eigenvalue " << cls.residuals[2].value;
      throw Error(ErrorCode::NotContractive, os.str());
    }
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      if (!commutes(maps[i], maps[j], use)) {
        std::ostringstream os;
        os << "generators '" << names[i] << "' and '" << names[j] << "' do not commute (residual "
           << commutation_residual(maps[i], maps[j]) << ")";
        throw Error(ErrorCode::NotCommuting, os.str());
      }
    }
  }
  return {CpSemigroup::unchecked(std::move(maps)), std::move(names), file_tol};
}

SemigroupDocument load_semigroup(const std::filesystem::path& path, const std::optional<Tolerance>& tol) {
  return parse_semigroup(read_json(path), tol);
}

json semigroup_to_json(const CpSemigroup& g, const std::vector<std::string>& names,
                       const std::optional<Tolerance>& tol) {
  json doc;
  doc["dim"] = g.dim();
  if (tol) doc["tolerance"] = {{"abs", tol->abs}, {"rel", tol->rel}};
  json gens = json::array();
  for (std::size_t i = 0; i < g.arity(); ++i) {
    json kraus = json::array();
    for (const auto& k : g.generator(i).kraus()) kraus.push_back(matrix_to_json(k));
    const std::string name = i < names.size() ? names[i] : "T" + std::to_string(i + 1);
    gens.push_back({{"name", name}, {"kraus", std::move(kraus)}});
  }
  doc["generators"] = std::move(gens);
  return doc;
}

void save_semigroup(const std::filesystem::path& path, const CpSemigroup& g, const std::vector<std::string>& names,
                    const std::optional<Tolerance>& tol) {
  save_json(path, semigroup_to_json(g, names, tol));
}

DilationCertificate parse_certificate(const json& doc, const Tolerance& tol) {
  const std::size_t h = parse_count(field(doc, "", "h_dim"), "/h_dim");
  const std::size_t k = parse_count(field(doc, "", "k_dim"), "/k_dim");
  if (h == 0 || k < h) schema_error("/k_dim", "need 0 < h_dim <= k_dim");

  CMatrix embed = parse_matrix(field(doc, "", "embed"), "/embed", "embed");
  require_shape(embed, k, h, "/embed", "embed");

  const json& gens = field(doc, "", "theta_generators");
  if (!gens.is_array() || gens.empty()) schema_error("/theta_generators", "expected a non-empty array");
  std::vector<Endomap> theta;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string gp = "/theta_generators/" + std::to_string(i);
    const std::string context = "theta generator " + std::to_string(i);
    CMatrix s = parse_matrix(gens[i], gp, context);
    require_shape(s, k * k, k * k, gp, context);
    theta.push_back(Endomap::from_superop(std::move(s), k, k));
  }

  const json& hz = field(doc, "", "horizon");
  if (!hz.is_array()) schema_error("/horizon", "expected an array of counts");
  std::vector<std::size_t> horizon;
  for (std::size_t i = 0; i < hz.size(); ++i) horizon.push_back(parse_count(hz[i], "/horizon/" + std::to_string(i)));
  if (horizon.size() != theta.size()) {
    schema_error("/horizon", "length " + std::to_string(horizon.size()) + " differs from generator count " +
                                 std::to_string(theta.size()));
  }

  std::optional<MatrixStarAlgebra> algebra;
  if (doc.contains("algebra_basis")) {
    const json& basis = doc["algebra_basis"];
    if (!basis.is_array() || basis.empty()) schema_error("/algebra_basis", "expected a non-empty array");
    std::vector<CMatrix> elems;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::string bp = "/algebra_basis/" + std::to_string(i);
      CMatrix b = parse_matrix(basis[i], bp, "algebra element " + std::to_string(i));
      require_shape(b, k, k, bp, "algebra element " + std::to_string(i));
      elems.push_back(std::move(b));
    }
    algebra = MatrixStarAlgebra::from_spanning(k, elems, tol);
  }
  try {
    return make_certificate(std::move(embed), std::move(theta), MultiIndex(std::move(horizon)), std::move(algebra));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) schema_error("/embed", e.what());
    throw;
  }
}

DilationCertificate load_certificate(const std::filesystem::path& path, const Tolerance& tol) {
  return parse_certificate(read_json(path), tol);
}

json certificate_to_json(const DilationCertificate& cert) {
  json doc;
  doc["h_dim"] = cert.h_dim;
  doc["k_dim"] = cert.k_dim;
  doc["embed"] = matrix_to_json(cert.embed);
  json gens = json::array();
  for (const auto& e : cert.theta) gens.push_back(matrix_to_json(e.superop()));
  doc["theta_generators"] = std::move(gens);
  doc["horizon"] = cert.horizon.components();
  if (!cert.algebra.is_full()) {
    json basis = json::array();
    for (std::size_t i = 0; i < cert.algebra.dimension(); ++i) basis.push_back(matrix_to_json(cert.algebra.element(i)));
    doc["algebra_basis"] = std::move(basis);
  }
  return doc;
}

void save_certificate(const std::filesystem::path& path, const DilationCertificate& cert) {
  save_json(path, certificate_to_json(cert), -1);
}

json report_to_json(const VerificationReport& report) {
  auto number = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  json checks = json::array();
  for (const auto& c : report.checks()) {
    checks.push_back({{"name", c.name},
                      {"residual", number(c.residual)},
                      {"threshold", number(c.threshold)},
                      {"pass", c.pass}});
  }
  return {{"suite", report.suite()},
          {"overall", report.overall()},
          {"max_residual", number(report.max_residual())},
          {"checks", std::move(checks)},
          {"notes", report.notes()}};
}

void save_json(const std::filesystem::path& path, const json& doc, int indent) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << doc.dump(indent) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace cpdil
