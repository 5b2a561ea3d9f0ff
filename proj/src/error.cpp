#include "delzant/error.hpp"

namespace delzant {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::EmptyFace: return "empty face";
    case ErrorKind::NonSmoothFace: return "non-smooth face";
    case ErrorKind::BoundaryOfFace: return "minimizer on boundary of face";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::NoSolution: return "no solution";
    case ErrorKind::NotTorifiable: return "not torifiable";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NoCompactTorification: return "no compact torification";
  }
  return "error";
}

}  // namespace delzant
