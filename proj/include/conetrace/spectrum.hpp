#pragma once

#include <vector>

#include "conetrace/domain.hpp"
#include "conetrace/frobenius.hpp"
#include "conetrace/theta_map.hpp"

namespace conetrace {

struct EngineOptions {
  FrobeniusOptions frobenius;
  double ode_rel_tol = 1e-12;
};

/// Solutions of (A − λ)u = 0 whose tip behavior lies in D: the D_min-type
/// Frobenius solutions (leading exponents below the strip) plus the strip
/// solutions combined through Θ^{-1}W.
struct TipFamily {
  std::vector<FrobeniusSolution> solutions;
  CMatrix combo;  // m × p, columns = admissible combinations of `solutions`
  CMatrix theta;  // d × d, canonical coordinates of the strip solutions
  double x_match = 0.0;

  int count() const { return static_cast<int>(combo.cols()); }
  /// Euler jets of the admissible columns at x ≤ x_match (series evaluation).
  CMatrix euler_jet(double x) const;
};

struct DetResult {
  cplx value;          // det(B·Y(1)) divided by the row norms of B
  double scale = 1.0;  // Hadamard bound Π‖Y(1) columns‖

  double relative() const { return std::abs(value) / scale; }
};

/// Per-(A, W) data shared across λ: strip parts of the θ^{-1} tails and the
/// right boundary condition.
class CharacteristicSystem {
 public:
  CharacteristicSystem(const ConeOperator& a, const DomainSpec& w, EngineOptions opt = {});

  const ConeOperator& op() const { return a_; }
  const DomainSpec& domain() const { return w_; }
  const EngineOptions& options() const { return opt_; }

  TipFamily tip_family(cplx lambda) const;
  DetResult det(cplx lambda) const;
  /// x-jets at x = 1 spanning the solutions that satisfy the boundary condition.
  CMatrix right_kernel() const;

 private:
  ConeOperator a_;
  DomainSpec w_;
  EngineOptions opt_;
  std::vector<LogPowerFunction> strip_tails_;  // strip part of θ^{-1}(basis_i)
  int d_ = 0;
};

/// Part of f with exponents strictly inside the strip.
LogPowerFunction strip_part(const LogPowerFunction& f, int m);

DetResult characteristic_det(const ConeOperator& a, cplx lambda, const DomainSpec& w, const EngineOptions& opt = {});

struct Region {
  double re_lo = 0.0, re_hi = 0.0;
  double im_lo = 0.0, im_hi = 0.0;

  static Region interval(double lo, double hi) { return {lo, hi, 0.0, 0.0}; }
  bool is_interval() const { return im_lo == 0.0 && im_hi == 0.0; }
};

struct Eigenvalue {
  cplx value;
  double residual = 0.0;  // relative determinant at the returned value
};

struct EigenSearchOptions {
  double s_step = 0.25;  // scan step in λ^{1/m}
  double min_box = 1e-7;
};

/// Real intervals: sign changes of the phase-rotated determinant in s = λ^{1/m},
/// refined by TOMS 748. Rectangles: argument principle with bisection.
std::vector<Eigenvalue> eigenvalues(const CharacteristicSystem& sys, const Region& region, int max_count,
                                    const EigenSearchOptions& opt = {});

/// Winding number of det around the rectangle boundary.
int count_eigenvalues(const CharacteristicSystem& sys, const Region& rect);

}  // namespace conetrace
