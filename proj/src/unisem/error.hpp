#pragma once

#include <stdexcept>
#include <string>

namespace unisem {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  UnsafeFlow,
  UnbalancedWiring,
  VertexBudgetExceeded,
  OutDegreeViolation,
  PositionCountMismatch,
  DuplicatePosition,
  SymbolNotInAlphabet,
  Automaton,
  Io,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; absence of a result
// (non-unifiable terms, undefined products) is never an error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unisem
