#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matfrag {

enum class ErrorKind {
  InvalidField,
  FieldMismatch,
  DivisionByZero,
  NotASubfield,
  DegreeCap,
  UnknownLabel,
  LabelCollision,
  InvalidArgs,
  InvalidMinorSpec,
  GroundSetMismatch,
  CapExceeded,
  NotFragile,
  PostconditionViolation,
  MalformedJson,
  SchemaViolation,
  Exhausted,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI and the Python layer can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace matfrag
