#pragma once

// JSON file formats for semigroups, certificates and reports.
//
//   complex      [re, im]
//   matrix       array of rows of complex numbers
//   semigroup    {"dim", "tolerance"?: {"abs", "rel"},
//                 "generators": [{"name", "kraus": [matrix, ...]}, ...]}
//   certificate  {"h_dim", "k_dim", "embed": matrix,
//                 "theta_generators": [superoperator, ...], "horizon": [int, ...],
//                 "algebra_basis"?: [matrix, ...]}
//
// Superoperators act on column-stacked vectors (k^2 x k^2). Schema problems
// raise SchemaError whose message starts with the JSON pointer of the
// offending value.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cpdil/dilation.hpp"
#include "cpdil/report.hpp"
#include "cpdil/semigroup.hpp"

namespace cpdil {

struct SemigroupDocument {
  CpSemigroup semigroup;
  std::vector<std::string> names;
  std::optional<Tolerance> tolerance;  // as stored in the file
};

// Validates every generator (CP, contractive) and every pair (commuting),
// naming generators in error messages. `tol` overrides the file tolerance.
SemigroupDocument parse_semigroup(const nlohmann::json& doc, const std::optional<Tolerance>& tol = {});
SemigroupDocument load_semigroup(const std::filesystem::path& path, const std::optional<Tolerance>& tol = {});

nlohmann::json semigroup_to_json(const CpSemigroup& g, const std::vector<std::string>& names = {},
                                 const std::optional<Tolerance>& tol = {});
void save_semigroup(const std::filesystem::path& path, const CpSemigroup& g,
                    const std::vector<std::string>& names = {}, const std::optional<Tolerance>& tol = {});

DilationCertificate parse_certificate(const nlohmann::json& doc, const Tolerance& tol = {});
DilationCertificate load_certificate(const std::filesystem::path& path, const Tolerance& tol = {});
nlohmann::json certificate_to_json(const DilationCertificate& cert);
void save_certificate(const std::filesystem::path& path, const DilationCertificate& cert);

nlohmann::json report_to_json(const VerificationReport& report);
// indent < 0 writes compact JSON (used for certificates, whose superoperators are large).
void save_json(const std::filesystem::path& path, const nlohmann::json& doc, int indent = 1);

}  // namespace cpdil
