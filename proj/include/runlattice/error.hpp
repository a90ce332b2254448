#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace runlattice {

enum class ErrorCode {
  // domain
  InvalidDegreeCount,
  NonzeroGainAtBottom,
  NonIncreasingGains,
  DegreeOutOfRange,
  EmptyRun,
  UniverseTooLarge,
  PrefixOnSetBased,
  // orderings
  ModeMismatch,
  LengthMismatch,
  // lattice
  NotALattice,
  NoClosedForm,
  NotComparable,
  BottomHasNoDecomposition,
  NotDistributive,
  // metrics
  MissingParam,
  InvalidParam,
  RequiresLattice,
  NotAValuation,
  IncompleteAssignment,
  InconsistentAssignment,
  // parsing
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace runlattice
