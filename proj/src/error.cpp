#include "cpdil/error.hpp"

namespace cpdil {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotCp: return "NotCp";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotMarkov: return "NotMarkov";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotUnitalization: return "NotUnitalization";
    case ErrorCode::NotADilation: return "NotADilation";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotUnitalFamily: return "NotUnitalFamily";
    case ErrorCode::CrossCommutationFailure: return "CrossCommutationFailure";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::NotConjugationForm: return "NotConjugationForm";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cpdil
