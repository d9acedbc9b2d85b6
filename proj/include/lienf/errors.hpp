#pragma once

#include <stdexcept>
#include <string>

namespace lienf {

/// Every failure the engine can signal deliberately.  The CLI maps these to
/// process exit codes; tests match on the kind instead of message text.
enum class ErrorKind {
  DivisionByZero,
  ParseError,
  DimensionMismatch,
  IndexOutOfRange,
  SingularLinearPart,
  EigenvalueNotGaussianRational,
  RootSearchOverflow,
  NotSimultaneouslyTriangularizable,
  NotTriangular,
  NonCommuting,
  DegenerateFrame,
  StraighteningResidue,
  ShapeViolation,
  SearchExhausted,
  SingularHomologicalSystem,
  NonResonantResidue,
  ConstrainedCocycleInfeasible,
  RepresentationBroken,
  ValidationFailed,
  SchemaError,
  IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace lienf
