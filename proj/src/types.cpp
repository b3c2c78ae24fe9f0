#include "sovxxx/types.hpp"

#include <algorithm>

namespace sov {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateNodes: return "degenerate-nodes";
    case ErrorKind::SamplingFailure: return "sampling-failure";
    case ErrorKind::PoleCollision: return "pole-collision";
    case ErrorKind::Retry: return "retry";
    case ErrorKind::Biorthogonality: return "biorthogonality-failure";
    case ErrorKind::NotOnShell: return "not-on-shell";
    case ErrorKind::SpectrumPairing: return "spectrum-pairing";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::LimitFailure: return "limit-failure";
    case ErrorKind::DegenerateSet: return "degenerate-set";
  }
  return "error";
}

cplx det(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  if (m.rows() == 1) return m(0, 0);
  return m.partialPivLu().determinant();
}

double rel_diff(cplx a, cplx b, double floor) {
  double s = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / s;
}

}  // namespace sov
