#pragma once

#include <stdexcept>
#include <string>

namespace drsit {

/// Failure categories surfaced by the library. The CLI maps these onto its
/// exit-code contract (config = 2, io = 3, degenerate data = 4).
enum class ErrorKind {
  EmptyPanel,
  InvalidPanel,
  LagTooLarge,
  IndexOutOfRange,
  TooFewTrajectories,
  ShapeMismatch,
  SingularSystem,
  DegenerateCandidate,
  TooFewSamples,
  NonFiniteScore,
  DomainError,
  DegenerateLabels,
  InvalidConfig,
  ParseError,
  InconsistentSchema,
  UnevenTrajectories,
  UnknownGene,
  SchemaVersionMismatch,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace drsit
