#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prbox {

enum class ErrorCode {
  kOutOfRange,
  kShapeMismatch,
  kRoleMismatch,
  kDegenerate,
  kNotNormalized,
  kInvalidConvention,
  kInvalidTable,
  kSignalling,
  kUnsupported,
  kGuardExceeded,
  kNoSeparatingInput,
  kNonDeterministicParity,
  kIdenticalStates,
  kNotInCatalog,
  kInexactDivision,
  kOverflow,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind of violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prbox
