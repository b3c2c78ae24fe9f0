#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sov {

using cplx = std::complex<double>;
using CList = std::vector<cplx>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;

enum class ErrorKind {
  InvalidArgument,
  DegenerateNodes,
  SamplingFailure,
  PoleCollision,
  Retry,
  Biorthogonality,
  NotOnShell,
  SpectrumPairing,
  Shape,
  LimitFailure,
  DegenerateSet,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// determinant with det of the empty matrix equal to 1
cplx det(const Mat& m);

// relative difference |a-b| / max(|a|,|b|,floor)
double rel_diff(cplx a, cplx b, double floor = 1e-300);

}  // namespace sov
