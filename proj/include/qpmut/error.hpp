#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpmut {

enum class ErrorKind {
  DivisionByZero,
  ShapeMismatch,
  ContainmentViolation,
  NotWellDefined,
  UnknownVertex,
  UnknownArrow,
  DuplicateId,
  LoopPresent,
  TwoCycleAtK,
  NotTwoCycle,
  OverlappingPairs,
  NotACycle,
  NotAPath,
  ArrowsNotComposableAtK,
  QuiverMismatch,
  DegreeOverflow,
  NotSplittable,
  DegenerateQuadraticPart,
  RelationViolated,
  NotNilpotent,
  QpMismatch,
  Inconclusive,
  PreconditionViolated,
  NotAMorphism,
  GenerationExhausted,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ContainmentViolation: return "ContainmentViolation";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownArrow: return "UnknownArrow";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::LoopPresent: return "LoopPresent";
    case ErrorKind::TwoCycleAtK: return "TwoCycleAtK";
    case ErrorKind::NotTwoCycle: return "NotTwoCycle";
    case ErrorKind::OverlappingPairs: return "OverlappingPairs";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::ArrowsNotComposableAtK: return "ArrowsNotComposableAtK";
    case ErrorKind::QuiverMismatch: return "QuiverMismatch";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotSplittable: return "NotSplittable";
    case ErrorKind::DegenerateQuadraticPart: return "DegenerateQuadraticPart";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::QpMismatch: return "QpMismatch";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::GenerationExhausted: return "GenerationExhausted";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace qpmut
