#pragma once

#include <vector>

#include "conetrace/log_power.hpp"
#include "conetrace/polynomial.hpp"
#include "conetrace/types.hpp"

namespace conetrace {

/// Classical boundary condition at the regular endpoint x = 1: rows of
/// functionals acting on the jet (u(1), u'(1), ..., u^{(m-1)}(1)).
struct BoundaryCondition {
  CMatrix rows;

  static BoundaryCondition dirichlet(int m);
  int count() const { return static_cast<int>(rows.rows()); }
};

/// A = x^{-m} Σ_k a_k(x) (xD_x)^k on (0,1], a_k(x) = Σ_ν a[k][ν] x^ν.
/// Weight of the reference space is fixed at -m/2.
class ConeOperator {
 public:
  using Table = std::vector<std::vector<cplx>>;  // [k][ν]

  int order() const { return m_; }
  int depth() const { return static_cast<int>(coeff_[0].size()) - 1; }
  double weight() const { return -0.5 * m_; }
  const Table& table() const { return coeff_; }
  cplx coeff(int k, int nu) const;
  /// a_k evaluated at a point.
  cplx a(int k, cplx x) const;
  const BoundaryCondition& right_bc() const { return bc_; }

  /// Copy with the table zero-padded (or truncated) to the given depth.
  ConeOperator with_depth(int depth) const;
  /// A − λ, i.e. −λ added to a[0][m].
  ConeOperator shifted(cplx lambda) const;
  ConeOperator negated() const;

 private:
  friend ConeOperator build_operator(int m, ConeOperator::Table coeff, BoundaryCondition bc);
  ConeOperator(int m, Table coeff, BoundaryCondition bc) : m_(m), coeff_(std::move(coeff)), bc_(std::move(bc)) {}

  int m_ = 0;
  Table coeff_;
  BoundaryCondition bc_;
};

/// Σ_k b_k (xD_x)^k; the Taylor part P_ν of a cone operator.
struct FrozenOperator {
  int m = 0;
  std::vector<cplx> coeff0;
};

/// Closed sector {λ : |arg λ − theta0| ≤ halfwidth}, angles in radians.
struct Sector {
  double theta0 = kPi;
  double halfwidth = kPi / 4;
};

/// Validates and builds; an empty `bc` means Dirichlet of order m/2.
/// The table is zero-padded so that depth ≥ m.
ConeOperator build_operator(int m, ConeOperator::Table coeff, BoundaryCondition bc = {});

FrozenOperator taylor_component(const ConeOperator& a, int nu);
Polynomial conormal_symbol(const ConeOperator& a, int nu);
Polynomial conormal_symbol(const FrozenOperator& p);
ConeOperator model_operator(const ConeOperator& a);
bool has_x_independent_coefficients(const ConeOperator& a);
bool check_parameter_ellipticity(const ConeOperator& a, const Sector& sector);

LogPowerFunction apply_symbolic(const FrozenOperator& p, const LogPowerFunction& f);
/// Exact action of x^{-m} Σ_{ν ≤ trunc} x^ν P_ν on f.
LogPowerFunction apply_symbolic(const ConeOperator& a, const LogPowerFunction& f, int trunc);

/// Formal symmetry in x^{-m/2}L²_b: Σ_k conj(a[k][ν]) (σ − iν)^k ≡ Σ_k a[k][ν] σ^k for every ν.
bool is_formally_symmetric(const ConeOperator& a, double tol = 1e-12);

}  // namespace conetrace
