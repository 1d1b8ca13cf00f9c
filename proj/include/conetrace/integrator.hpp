#pragma once

#include <vector>

#include "conetrace/cone_operator.hpp"

namespace conetrace {

/// Jets are m × p matrices, one column per solution. "Euler jets" hold
/// (x∂_x)^j u for j < m; "x-jets" hold u^{(j)}(x).
CMatrix euler_to_x_jet(const CMatrix& euler, double x);
CMatrix x_to_euler_jet(const CMatrix& xjet, double x);

struct PropagateResult {
  CMatrix jet;                  // x-jet at x1
  double error_estimate = 0.0;  // ‖jet − jet at tol/32‖ / max(1, ‖jet‖)
  int steps = 0;
};

/// Advances solutions of (A − λ)u = 0 from x0 to x1 (either direction) with an
/// adaptive Runge–Kutta–Fehlberg 7(8) integrator on the companion system in t = log x.
PropagateResult propagate(const ConeOperator& a, cplx lambda, const CMatrix& xjet0, double x0, double x1,
                          double rel_tol = 1e-11);

/// Euler jets at each point of `xs` (monotone, starting on the far side of
/// or at x0); used by the Green kernel and the determinant. `a` must already include −λ.
std::vector<CMatrix> propagate_euler(const ConeOperator& shifted, const CMatrix& euler0, double x0,
                                     const std::vector<double>& xs, double rel_tol, int* steps = nullptr);

}  // namespace conetrace
