#include "ringdecomp/error.hpp"

namespace ringdecomp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::UnsupportedRingKind: return "UnsupportedRingKind";
    case ErrorCode::NotEquivalentToGenerator: return "NotEquivalentToGenerator";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace ringdecomp
