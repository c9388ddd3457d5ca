#include "ncmf/error.hpp"

namespace ncmf {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InhomogeneousRelation: return "InhomogeneousRelation";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::RelationNotPreserved: return "RelationNotPreserved";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::AmbiguousSolution: return "AmbiguousSolution";
    case ErrorKind::ImageDegreeMismatch: return "ImageDegreeMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InhomogeneousEntry: return "InhomogeneousEntry";
    case ErrorKind::ProductMismatch: return "ProductMismatch";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::SquareMismatch: return "SquareMismatch";
    case ErrorKind::PdTooLarge: return "PdTooLarge";
    case ErrorKind::FreeSummandPresent: return "FreeSummandPresent";
    case ErrorKind::NoEligibleSyzygy: return "NoEligibleSyzygy";
    case ErrorKind::NotEigenvector: return "NotEigenvector";
    case ErrorKind::DoesNotCommuteWithSigma: return "DoesNotCommuteWithSigma";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::TransportVerificationFailed: return "TransportVerificationFailed";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownName: return "UnknownName";
  }
  return "Error";
}

}  // namespace ncmf
