#include "frobcount/error.hpp"

namespace frobcount {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquarefreeDisc: return "NonSquarefreeDisc";
    case ErrorCode::InvalidDisc: return "InvalidDisc";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::CutoffExceeded: return "CutoffExceeded";
    case ErrorCode::AmbiguousOrder: return "AmbiguousOrder";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::HasseViolation: return "HasseViolation";
    case ErrorCode::MismatchedPrime: return "MismatchedPrime";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BeyondScan: return "BeyondScan";
    case ErrorCode::BadAlphaPair: return "BadAlphaPair";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::EllTooLarge: return "EllTooLarge";
    case ErrorCode::EllDividesBoth: return "EllDividesBoth";
    case ErrorCode::ZeroDet: return "ZeroDet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CacheInvalid: return "CacheInvalid";
    case ErrorCode::MissingTable: return "MissingTable";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace frobcount
