#pragma once

#include <string>
#include <vector>

namespace cpdil {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Ordered list of named residual checks. Each entry carries the threshold it
// was judged against so that a report is self-contained evidence.
class VerificationReport {
 public:
  explicit VerificationReport(std::string suite = {}) : suite_(std::move(suite)) {}

  // pass iff residual <= threshold (NaN residuals fail).
  void add(std::string name, double residual, double threshold);

  // Operator inequality check: stores residual = -min_eigenvalue so that the
  // entry passes iff min_eigenvalue >= -floor.
  void add_min_eigenvalue(std::string name, double min_eigenvalue, double floor);

  // Boolean condition with no natural residual (residual 0 or 1, threshold 0).
  void add_condition(std::string name, bool holds);

  void note(std::string text) { notes_.push_back(std::move(text)); }

  // Appends the checks and notes of `other`, prefixing check names.
  void append(const VerificationReport& other, const std::string& prefix = {});

  bool overall() const;
  double max_residual() const;
  const Check* first_failure() const;

  const std::string& suite() const { return suite_; }
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::string suite_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace cpdil
