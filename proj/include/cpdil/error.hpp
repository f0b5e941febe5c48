#pragma once

#include <stdexcept>
#include <string>

namespace cpdil {

enum class ErrorCode {
  NonSquare = 1,
  NotHermitian,
  DimensionMismatch,
  NotPsd,
  NotCommuting,
  NotCp,
  NotContractive,
  ArityMismatch,
  NotUnital,
  NotProjection,
  NotInAlgebra,
  NotMarkov,
  NotMinimal,
  NotUnitalization,
  NotADilation,
  NotUnitary,
  NotUnitalFamily,
  CrossCommutationFailure,
  NotContraction,
  NotConjugationForm,
  IoError,
  SchemaError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; the code is what
// the C API hands back to callers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cpdil
