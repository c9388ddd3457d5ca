#pragma once

#include <stdexcept>
#include <string>

namespace ncmf {

enum class ErrorKind {
  ContextMismatch,
  InvalidArgument,
  InhomogeneousRelation,
  TruncationExceeded,
  RelationNotPreserved,
  NotInvertible,
  NotNormal,
  AmbiguousSolution,
  ImageDegreeMismatch,
  ShapeMismatch,
  InhomogeneousEntry,
  ProductMismatch,
  RankMismatch,
  SquareMismatch,
  PdTooLarge,
  FreeSummandPresent,
  NoEligibleSyzygy,
  NotEigenvector,
  DoesNotCommuteWithSigma,
  VerificationFailed,
  TransportVerificationFailed,
  Syntax,
  UnknownName,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncmf
