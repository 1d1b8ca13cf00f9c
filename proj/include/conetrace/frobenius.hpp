#pragma once

#include <vector>

#include "conetrace/cone_operator.hpp"
#include "conetrace/log_power.hpp"

namespace conetrace {

struct FrobeniusOptions {
  double x_match = 0.1;
  int series_order = 40;
  double rel_tol = 1e-13;  // series tail tolerance at x_match
  int max_log_depth = 24;
};

/// u = Σ_{ν ≤ N} x^{iσ₀+ν} Σ_k series[ν][k] log^k x, a solution of (A − λ)u = 0.
struct FrobeniusSolution {
  cplx sigma0;
  int leading_log = 0;  // u ~ x^{iσ₀} log^{leading_log} x
  int log_depth = 0;    // largest log power in the series
  std::vector<std::vector<cplx>> series;
  double radius = 0.0;  // x_match
  cplx lambda;

  LogPowerFunction as_function() const;
  /// Euler jet (x∂_x)^j u, j < count, summed directly from the series.
  CVector euler_jet(double x, int count) const;
  /// Largest contribution among the last three orders relative to the largest term, at x.
  double tail_ratio(double x) const;
};

/// m independent solutions, one per (root, log power) of P̂₀ with multiplicity;
/// the common radius is halved from opt.x_match until every tail is below rel_tol.
std::vector<FrobeniusSolution> frobenius_basis(const ConeOperator& a, cplx lambda, const FrobeniusOptions& opt = {});

/// Solves P(τ − i∂_L) q = rhs for a log polynomial q (coefficients of L^k),
/// where τ is a root of multiplicity p of P; the lowest p coefficients of q are 0.
std::vector<cplx> solve_log_polynomial(const Polynomial& p, cplx tau, int multiplicity, const std::vector<cplx>& rhs);
/// P(τ − i∂_L) q.
std::vector<cplx> apply_log_polynomial(const Polynomial& p, cplx tau, const std::vector<cplx>& q);

}  // namespace conetrace
