#pragma once

// Named demos. Each builds its fixture, runs the relevant verification
// suites, writes the semigroup/certificate files and a report into an output
// directory, and returns the combined report.
//
//   parrott   Parrott-type commuting contraction triple and its CP semigroup
//   markov6   unitalized, padded Parrott triple: three commuting unital CP maps on M_6
//   schaffer  truncated Schaffer dilation of a random 2x2 contraction
//   tower     truncated tower of a unitalized map, then corner restriction
//   cross     cross-commuting Kraus families on C^2 (x) C^2 (x) C^2

#include <filesystem>
#include <string>
#include <vector>

#include "cpdil/numerics.hpp"
#include "cpdil/report.hpp"

namespace cpdil {

struct DemoOutcome {
  VerificationReport report;
  std::vector<std::filesystem::path> files;
};

const std::vector<std::string>& demo_names();

// Throws InvalidArgument for an unknown name and IoError when files cannot be written.
DemoOutcome run_demo(const std::string& name, const std::filesystem::path& out_dir, const Tolerance& tol = {});

// Every demo into out_dir; report checks are prefixed with the demo name.
DemoOutcome export_gallery(const std::filesystem::path& out_dir, const Tolerance& tol = {});

}  // namespace cpdil
