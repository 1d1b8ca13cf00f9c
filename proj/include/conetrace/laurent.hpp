#pragma once

#include <vector>

#include "conetrace/polynomial.hpp"
#include "conetrace/types.hpp"

namespace conetrace {

/// Truncated Laurent expansion Σ_{j=lo}^{hi} c_j (σ − center)^j, known
/// exactly through degree hi.
class LaurentExpansion {
 public:
  LaurentExpansion() = default;
  LaurentExpansion(cplx center, int lo, std::vector<cplx> coeffs);

  static LaurentExpansion zero(cplx center, int hi);

  cplx center() const { return center_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  /// Coefficient at degree j (0 outside the stored window).
  cplx operator[](int j) const;
  /// Pole order max(0, -lo).
  int pole_order() const { return lo_ < 0 ? -lo_ : 0; }

  /// Strips leading coefficients with |c| ≤ tol·scale while lo < 0.
  LaurentExpansion canonical(double rel_tol = 0.0) const;
  LaurentExpansion truncated(int hi) const;

  friend LaurentExpansion laurent_add(const LaurentExpansion& a, const LaurentExpansion& b);
  friend LaurentExpansion laurent_mul(const LaurentExpansion& a, const LaurentExpansion& b);

 private:
  cplx center_{};
  int lo_ = 0;
  std::vector<cplx> c_;
};

LaurentExpansion laurent_add(const LaurentExpansion& a, const LaurentExpansion& b);
LaurentExpansion laurent_mul(const LaurentExpansion& a, const LaurentExpansion& b);
LaurentExpansion laurent_scale(cplx s, const LaurentExpansion& a);
/// Degrees < 0 only; zero-filled (and still exact) through a.hi().
LaurentExpansion singular_part(const LaurentExpansion& a);
/// g(σ) = f(σ + shift): same coefficients, center moved to center − shift.
LaurentExpansion shift_argument(const LaurentExpansion& a, cplx shift);

/// Taylor expansion of a polynomial at `center`, exact through degree hi.
LaurentExpansion laurent_of_polynomial(const Polynomial& p, cplx center, int hi);

/// Expansion of 1/P at `center` through degree hi. The center counts as a
/// root of order p when the first p Taylor coefficients are below
/// `root_tol` relative to the coefficient scale.
LaurentExpansion laurent_inverse_of_polynomial(const Polynomial& p, cplx center, int hi, double root_tol = 1e-10);

/// Mellin transform of 1_{[0,1]}(x) x^{iσ₀} log^k x, which equals
/// k!(−1)^k i^{k+1} (σ − σ₀)^{−(k+1)} exactly; returned through degree hi.
LaurentExpansion mellin_cutoff(cplx sigma0, int k, int hi);

}  // namespace conetrace
