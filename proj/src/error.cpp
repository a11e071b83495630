#include "bdim/error.hpp"

namespace bdim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotAnExtension: return "NotAnExtension";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotDistinguishing: return "NotDistinguishing";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::FixedPhiArityMismatch: return "FixedPhiArityMismatch";
    case ErrorCode::SolverLaunchFailed: return "SolverLaunchFailed";
    case ErrorCode::UnparseableOutput: return "UnparseableOutput";
    case ErrorCode::ModelCheckFailed: return "ModelCheckFailed";
    case ErrorCode::DecodeInconsistent: return "DecodeInconsistent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace bdim
