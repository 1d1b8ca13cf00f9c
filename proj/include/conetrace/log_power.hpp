#pragma once

#include <vector>

#include "conetrace/types.hpp"

namespace conetrace {

/// One exponent block x^{iσ} Σ_k c_k log^k x.
struct LogPowerTerm {
  cplx exponent;
  std::vector<cplx> coeffs;

  /// Real part of the power of x, Re(iσ) = -Im σ.
  double real_power() const { return -exponent.imag(); }
};

/// Finite sum Σ_σ x^{iσ} Σ_k c_{σ,k} log^k x.
///
/// Canonical form: exponents pairwise distinct (within `kExponentTol`),
/// sorted by Im σ ascending (largest real power first) then Re σ, trailing
/// zero log coefficients trimmed, empty blocks dropped.
class LogPowerFunction {
 public:
  static constexpr double kExponentTol = 1e-9;

  LogPowerFunction() = default;

  static LogPowerFunction monomial(cplx exponent, int log_power, cplx coeff = 1.0);
  static LogPowerFunction block(cplx exponent, std::vector<cplx> coeffs);

  const std::vector<LogPowerTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeffs to the block at `exponent`, creating it if needed.
  void accumulate(cplx exponent, const std::vector<cplx>& coeffs);
  /// Log coefficients at `exponent` (empty when absent).
  std::vector<cplx> coeffs_at(cplx exponent) const;
  cplx coeff(cplx exponent, int log_power) const;

  LogPowerFunction& operator+=(const LogPowerFunction& other);
  LogPowerFunction& operator-=(const LogPowerFunction& other);
  LogPowerFunction& operator*=(cplx s);
  friend LogPowerFunction operator+(LogPowerFunction a, const LogPowerFunction& b) { return a += b; }
  friend LogPowerFunction operator-(LogPowerFunction a, const LogPowerFunction& b) { return a -= b; }
  friend LogPowerFunction operator*(cplx s, LogPowerFunction a) { return a *= s; }

  /// x^ν · f.
  LogPowerFunction times_power(int nu) const;
  /// (xD_x) f with D_x = -i ∂_x.
  LogPowerFunction apply_xD() const;
  /// (x∂_x)^j f for j = 0..count-1, evaluated at x.
  std::vector<cplx> euler_jet(double x, int count) const;
  /// κ_ρ f(x) = ρ^{m/2} f(ρx).
  LogPowerFunction kappa(double rho, int m) const;

  cplx operator()(double x) const;
  double max_abs_coeff() const;
  /// Drops coefficients below tol·max_abs_coeff() and re-canonicalizes.
  LogPowerFunction trimmed(double rel_tol) const;

 private:
  void canonicalize();
  std::vector<LogPowerTerm> terms_;
};

bool same_exponent(cplx a, cplx b);

}  // namespace conetrace
