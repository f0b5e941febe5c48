#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cpdil/constructors.hpp"
#include "cpdil/error.hpp"
#include "cpdil/io.hpp"
#include "oracles.hpp"

using namespace cpdil;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cpdil_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string schema_message(const json& doc) {
  try {
    parse_semigroup(doc);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    return e.what();
  }
  FAIL("expected SchemaError");
  return {};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("semigroup round trip") {
    oracle::Rng rng(71);
    const CMatrix t = rng.contraction(3, 0.8);
    const CpSemigroup g = unitalize(CpSemigroup::from_generators({conjugation(t), conjugation(t * t)}));
    const auto path = scratch("roundtrip.semigroup.json");
    save_semigroup(path, g, {"A", "B"}, Tolerance{1e-10, 1e-8});
    const SemigroupDocument back = load_semigroup(path);
    REQUIRE(back.semigroup.arity() == 2);
    CHECK(back.names == std::vector<std::string>{"A", "B"});
    REQUIRE(back.tolerance.has_value());
    CHECK(back.tolerance->abs == 1e-10);
    CHECK(back.tolerance->rel == 1e-8);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(superoperator_distance(g.generator(i), back.semigroup.generator(i)) <= 1e-12);
    }
  }

  TEST_CASE("default generator names") {
    const CpSemigroup g = CpSemigroup::from_generators({CpMap::identity(2), CpMap::identity(2)});
    const json doc = semigroup_to_json(g);
    CHECK(doc["generators"][0]["name"] == "T1");
    CHECK(doc["generators"][1]["name"] == "T2");
    CHECK(doc["dim"] == 2);
    CHECK_FALSE(doc.contains("tolerance"));
  }

  TEST_CASE("schema errors carry a pointer and the generator name") {
    json doc = semigroup_to_json(CpSemigroup::from_generators({CpMap::identity(2)}));
    doc["generators"][0]["kraus"].push_back(matrix_json(CMatrix::Zero(3, 2)));
    const std::string msg = schema_message(doc);
    CHECK(msg.find("/generators/0/kraus/1") != std::string::npos);
    CHECK(msg.find("generator 'T1'") != std::string::npos);
    CHECK(msg.find("3x2") != std::string::npos);

    json ragged = semigroup_to_json(CpSemigroup::from_generators({CpMap::identity(2)}));
    ragged["generators"][0]["kraus"][0][1].erase(1);
    CHECK(schema_message(ragged).find("/generators/0/kraus/0/1") != std::string::npos);

    json bad_complex = semigroup_to_json(CpSemigroup::from_generators({CpMap::identity(2)}));
    bad_complex["generators"][0]["kraus"][0][0][0] = "one";
    CHECK(schema_message(bad_complex).find("/generators/0/kraus/0/0/0") != std::string::npos);

    CHECK(schema_message(json{{"generators", json::array()}}).find("dim") != std::string::npos);
    CHECK(schema_message(json{{"dim", 2}, {"generators", json::array()}}).find("/generators") != std::string::npos);

    json dup = semigroup_to_json(CpSemigroup::from_generators({CpMap::identity(2), CpMap::identity(2)}), {"X", "X"});
    CHECK(schema_message(dup).find("duplicate") != std::string::npos);
  }

  TEST_CASE("semantic errors name the generator") {
    json doc = semigroup_to_json(CpSemigroup::from_generators({CpMap::identity(2)}), {"big"});
    doc["generators"][0]["kraus"][0] = matrix_json(2.0 * CMatrix::Identity(2, 2));
    try {
      parse_semigroup(doc);
      FAIL("expected NotContractive");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotContractive);
      CHECK(std::string(e.what()).find("'big'") != std::string::npos);
    }
    const json pair = semigroup_to_json(
        CpSemigroup::unchecked({conjugation(pauli_x()), conjugation(pauli_z() * std::sqrt(0.5) + pauli_x() * 0.5)}),
        {"P", "Q"});
    try {
      parse_semigroup(pair);
      FAIL("expected NotCommuting");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotCommuting);
      CHECK(std::string(e.what()).find("'P' and 'Q'") != std::string::npos);
    }
  }

  TEST_CASE("io errors") {
    try {
      load_semigroup("/nonexistent/dir/file.json");
      FAIL("expected IoError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IoError);
    }
    const auto path = scratch("garbage.json");
    std::ofstream(path) << "{ not json";
    try {
      load_semigroup(path);
      FAIL("expected SchemaError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
    }
  }

  TEST_CASE("certificate round trip") {
    const CMatrix t = oracle::Rng(72).contraction(2, 0.7);
    const CpSemigroup g = CpSemigroup::from_generators({conjugation(t)});
    const DilationCertificate cert = schaffer_truncated(t, 2);
    const auto path = scratch("schaffer.certificate.json");
    save_certificate(path, cert);
    const DilationCertificate back = load_certificate(path);
    CHECK(back.k_dim == cert.k_dim);
    CHECK(back.h_dim == cert.h_dim);
    CHECK(back.horizon == cert.horizon);
    CHECK((back.embed - cert.embed).norm() <= 1e-12);
    CHECK((back.theta[0].superop() - cert.theta[0].superop()).norm() <= 1e-12);
    CHECK(is_dilation(back, g).overall());
  }

  TEST_CASE("certificate with an explicit algebra") {
    std::vector<CMatrix> diag{matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)};
    const DilationCertificate cert = make_certificate(CMatrix::Identity(2, 1), {Endomap::conjugation(CMatrix(CMatrix::Identity(2, 2)))},
                                                      MultiIndex({1}), MatrixStarAlgebra::from_spanning(2, diag));
    const json doc = certificate_to_json(cert);
    REQUIRE(doc.contains("algebra_basis"));
    const DilationCertificate back = parse_certificate(doc);
    CHECK(back.algebra.dimension() == 2);
    CHECK_FALSE(back.algebra.is_full());
  }

  TEST_CASE("certificate schema errors") {
    const DilationCertificate cert = schaffer_truncated(CMatrix::Constant(1, 1, 0.5), 1);
    json doc = certificate_to_json(cert);
    doc["horizon"] = json::array({1, 2});
    try {
      parse_certificate(doc);
      FAIL("expected SchemaError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
      CHECK(std::string(e.what()).find("/horizon") != std::string::npos);
    }
    json bad_embed = certificate_to_json(cert);
    bad_embed["embed"] = matrix_json(2.0 * cert.embed);
    try {
      parse_certificate(bad_embed);
      FAIL("expected SchemaError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
      CHECK(std::string(e.what()).find("/embed") != std::string::npos);
    }
  }

  TEST_CASE("report json") {
    VerificationReport r("suite name");
    r.add("ok", 1e-15, 1e-9);
    r.add("bad", 1.0, 1e-9);
    r.note("a note");
    const json j = report_to_json(r);
    CHECK(j["suite"] == "suite name");
    CHECK(j["overall"] == false);
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["pass"] == false);
    CHECK(j["notes"][0] == "a note");
  }
}
