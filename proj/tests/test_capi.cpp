// Exercises the shared library through its C header only.

#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "cpdil/cpdil.h"

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "cpdil_test_capi";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and versions") {
    CHECK(std::string(cpd_version()) == "1.0.0");
    CHECK(std::string(cpd_status_name(CPD_OK)) == "Ok");
    CHECK(std::string(cpd_status_name(CPD_ERR_SCHEMA)) == "SchemaError");
    CHECK(std::string(cpd_status_name(CPD_ERR_NOT_A_DILATION)) == "NotADilation");
    CHECK(std::string(cpd_status_name(static_cast<cpd_status>(77))) == "Unknown");
    const cpd_tolerance t = cpd_default_tolerance();
    CHECK(t.abs == 1e-9);
    CHECK(t.rel == 1e-9);
  }

  TEST_CASE("null arguments and bad tolerances are rejected") {
    cpd_semigroup* g = nullptr;
    CHECK(cpd_semigroup_load(nullptr, nullptr, &g) == CPD_ERR_INVALID_ARGUMENT);
    CHECK(std::string(cpd_last_error()).find("path") != std::string::npos);
    CHECK(g == nullptr);
    cpd_report* r = nullptr;
    CHECK(cpd_demo_run("parrott", scratch_dir().c_str(), cpd_tolerance{-1.0, 0.0}, &r) == CPD_ERR_INVALID_ARGUMENT);
    CHECK(r == nullptr);
    CHECK(cpd_demo_run("nope", scratch_dir().c_str(), cpd_default_tolerance(), &r) == CPD_ERR_INVALID_ARGUMENT);
    CHECK(std::string(cpd_last_error()).find("unknown demo") != std::string::npos);
  }

  TEST_CASE("missing file and schema errors") {
    cpd_semigroup* g = nullptr;
    CHECK(cpd_semigroup_load("/nonexistent/x.json", nullptr, &g) == CPD_ERR_IO);
    const auto path = scratch_dir() / "bad.json";
    std::ofstream(path) << R"({"dim": 2, "generators": [{"name": "T1", "kraus": [[[[1,0],[0,0]]]]}]})";
    CHECK(cpd_semigroup_load(path.c_str(), nullptr, &g) == CPD_ERR_SCHEMA);
    CHECK(std::string(cpd_last_error()).find("/generators/0/kraus/0") != std::string::npos);
  }

  TEST_CASE("demo, reload and verify through handles") {
    const auto dir = scratch_dir();
    cpd_report* r = nullptr;
    REQUIRE(cpd_demo_run("schaffer", dir.c_str(), cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    CHECK(std::string(cpd_report_suite(r)) == "demo schaffer");
    REQUIRE(cpd_report_check_count(r) > 0);
    const char* name = nullptr;
    double residual = -1.0;
    double threshold = -1.0;
    int pass = -1;
    CHECK(cpd_report_check(r, 0, &name, &residual, &threshold, &pass) == CPD_OK);
    CHECK(name != nullptr);
    CHECK(pass == 1);
    CHECK(cpd_report_check(r, 100000, &name, &residual, &threshold, &pass) == CPD_ERR_INVALID_ARGUMENT);
    char* json = nullptr;
    REQUIRE(cpd_report_to_json(r, &json) == CPD_OK);
    CHECK(std::strstr(json, "\"overall\": true") != nullptr);
    cpd_string_free(json);
    cpd_report_free(r);

    cpd_semigroup* g = nullptr;
    cpd_certificate* c = nullptr;
    REQUIRE(cpd_semigroup_load((dir / "schaffer.semigroup.json").c_str(), nullptr, &g) == CPD_OK);
    REQUIRE(cpd_certificate_load((dir / "schaffer.certificate.json").c_str(), cpd_default_tolerance(), &c) == CPD_OK);
    CHECK(cpd_semigroup_dim(g) == 2);
    CHECK(cpd_semigroup_arity(g) == 1);
    CHECK(cpd_certificate_h_dim(c) == 2);

    REQUIRE(cpd_verify_dilation(c, g, cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);
    REQUIRE(cpd_verify_minimal(c, g, cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);

    const size_t bad_horizon[] = {1, 1};
    CHECK(cpd_certificate_set_horizon(c, bad_horizon, 2) == CPD_ERR_ARITY_MISMATCH);
    const size_t box[] = {3};
    REQUIRE(cpd_verify_law(g, box, 1, cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);

    // Not Markov: the unital equivalence suite refuses it.
    CHECK(cpd_verify_unital_equivalence(c, g, cpd_default_tolerance(), &r) == CPD_ERR_NOT_MARKOV);

    cpd_semigroup* gu = nullptr;
    REQUIRE(cpd_semigroup_unitalize(g, cpd_default_tolerance(), &gu) == CPD_OK);
    CHECK(cpd_semigroup_dim(gu) == 3);
    REQUIRE(cpd_verify_markov(gu, cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);

    // The Schaffer certificate is not a dilation of the unitalized semigroup.
    cpd_certificate* restricted = nullptr;
    CHECK(cpd_verify_corner(g, gu, c, cpd_default_tolerance(), &r, &restricted) != CPD_OK);
    CHECK(restricted == nullptr);

    cpd_semigroup_free(gu);
    cpd_certificate_free(c);
    cpd_semigroup_free(g);
  }

  TEST_CASE("corner restriction through handles") {
    const auto dir = scratch_dir();
    cpd_report* r = nullptr;
    REQUIRE(cpd_demo_run("tower", dir.c_str(), cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);
    cpd_semigroup* g = nullptr;
    cpd_semigroup* gu = nullptr;
    cpd_certificate* cu = nullptr;
    REQUIRE(cpd_semigroup_load((dir / "tower.base.semigroup.json").c_str(), nullptr, &g) == CPD_OK);
    REQUIRE(cpd_semigroup_load((dir / "tower.unitalized.semigroup.json").c_str(), nullptr, &gu) == CPD_OK);
    REQUIRE(cpd_certificate_load((dir / "tower.certificate.json").c_str(), cpd_default_tolerance(), &cu) == CPD_OK);
    cpd_certificate* restricted = nullptr;
    REQUIRE(cpd_verify_corner(g, gu, cu, cpd_default_tolerance(), &r, &restricted) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    REQUIRE(restricted != nullptr);
    CHECK(cpd_certificate_h_dim(restricted) == 1);
    cpd_report_free(r);
    REQUIRE(cpd_verify_strong(restricted, g, cpd_default_tolerance(), &r) == CPD_OK);
    CHECK(cpd_report_overall(r) == 1);
    cpd_report_free(r);

    // Swapping the roles of g and gu is rejected.
    CHECK(cpd_verify_corner(gu, g, cu, cpd_default_tolerance(), &r, nullptr) != CPD_OK);

    cpd_certificate_free(restricted);
    cpd_certificate_free(cu);
    cpd_semigroup_free(gu);
    cpd_semigroup_free(g);
  }

  TEST_CASE("free functions accept NULL") {
    cpd_semigroup_free(nullptr);
    cpd_certificate_free(nullptr);
    cpd_report_free(nullptr);
    cpd_string_free(nullptr);
    CHECK(cpd_report_overall(nullptr) == 0);
    CHECK(cpd_demo_count() == 5);
    CHECK(std::string(cpd_demo_name(0)) == "parrott");
    CHECK(cpd_demo_name(5) == nullptr);
  }
}
