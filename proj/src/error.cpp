#include "drsit/error.hpp"

namespace drsit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyPanel: return "EmptyPanel";
    case ErrorKind::InvalidPanel: return "InvalidPanel";
    case ErrorKind::LagTooLarge: return "LagTooLarge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TooFewTrajectories: return "TooFewTrajectories";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::DegenerateCandidate: return "DegenerateCandidate";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NonFiniteScore: return "NonFiniteScore";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateLabels: return "DegenerateLabels";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InconsistentSchema: return "InconsistentSchema";
    case ErrorKind::UnevenTrajectories: return "UnevenTrajectories";
    case ErrorKind::UnknownGene: return "UnknownGene";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace drsit
