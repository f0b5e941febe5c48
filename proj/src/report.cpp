#include "cpdil/report.hpp"

#include <algorithm>
#include <cmath>

namespace cpdil {

void VerificationReport::add(std::string name, double residual, double threshold) {
  const bool pass = !std::isnan(residual) && residual <= threshold;
  checks_.push_back({std::move(name), residual, threshold, pass});
}

void VerificationReport::add_min_eigenvalue(std::string name, double min_eigenvalue, double floor) {
  add(std::move(name), -min_eigenvalue, floor);
}

void VerificationReport::add_condition(std::string name, bool holds) {
  checks_.push_back({std::move(name), holds ? 0.0 : 1.0, 0.0, holds});
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.residual, c.threshold, c.pass});
  for (const auto& n : other.notes_) notes_.push_back(n);
}

bool VerificationReport::overall() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

double VerificationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& c : checks_) worst = std::max(worst, c.residual);
  return worst;
}

const Check* VerificationReport::first_failure() const {
  for (const auto& c : checks_) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

}  // namespace cpdil
