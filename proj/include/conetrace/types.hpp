#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conetrace {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  BadShape,
  DegenerateLeadingCoefficient,
  OutOfRange,
  TruncationExceeded,
  ZeroPolynomial,
  CenterMismatch,
  RootFindingFailed,
  BoundaryProximity,
  VerificationFailed,
  ResonanceAmbiguity,
  RankIndeterminate,
  NotSymmetric,
  SelectionAmbiguous,
  DomainCountMismatch,
  SeriesDivergence,
  ResonanceOverflow,
  StepSizeUnderflow,
  ContourThroughZero,
  NearEigenvalue,
  QuadratureNotConverged,
  TailDominates,
  SectorNotAdmissible,
  IllConditioned,
  Inconclusive,
  ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conetrace
