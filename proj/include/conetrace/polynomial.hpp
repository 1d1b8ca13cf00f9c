#pragma once

#include <vector>

#include "conetrace/types.hpp"

namespace conetrace {

/// Complex polynomial Σ c[k] σ^k, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial constant(cplx c) { return Polynomial({c}); }

  const std::vector<cplx>& coeffs() const { return c_; }
  /// Degree after dropping exact trailing zeros; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  cplx coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : cplx{}; }
  double scale() const;

  cplx operator()(cplx s) const;
  Polynomial derivative() const;
  /// σ ↦ p(σ + shift).
  Polynomial shifted(cplx shift) const;
  /// Taylor coefficients t_j with p(center + h) = Σ t_j h^j.
  std::vector<cplx> taylor_at(cplx center) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);

 private:
  std::vector<cplx> c_;
};

struct PolynomialRoot {
  cplx value;
  int multiplicity = 1;
};

/// Roots with multiplicities. Companion-matrix eigenvalues are clustered and
/// a cluster is accepted as a multiple root only when the derivatives up to
/// the cluster size vanish at its centroid (relative residual below
/// `cluster_tol`); the accepted root is then polished by Newton on the
/// lowest non-vanishing derivative.
std::vector<PolynomialRoot> polynomial_roots(const Polynomial& p, double cluster_tol = 1e-10);

}  // namespace conetrace
