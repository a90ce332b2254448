#include "runlattice/error.hpp"

namespace runlattice {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDegreeCount: return "InvalidDegreeCount";
    case ErrorCode::NonzeroGainAtBottom: return "NonzeroGainAtBottom";
    case ErrorCode::NonIncreasingGains: return "NonIncreasingGains";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::EmptyRun: return "EmptyRun";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::PrefixOnSetBased: return "PrefixOnSetBased";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NoClosedForm: return "NoClosedForm";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::BottomHasNoDecomposition: return "BottomHasNoDecomposition";
    case ErrorCode::NotDistributive: return "NotDistributive";
    case ErrorCode::MissingParam: return "MissingParam";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::RequiresLattice: return "RequiresLattice";
    case ErrorCode::NotAValuation: return "NotAValuation";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace runlattice
