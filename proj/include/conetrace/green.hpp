#pragma once

#include <vector>

#include "conetrace/polynomial.hpp"
#include "conetrace/quadrature.hpp"
#include "conetrace/spectrum.hpp"

namespace conetrace {

enum class TraceMethod { Green, Eigen };
const char* to_string(TraceMethod m);

/// Tr(φ(A_D − λ)^{-ℓ}) with an error estimate.
struct TraceSample {
  cplx lambda;
  int ell = 1;
  cplx value;
  TraceMethod method = TraceMethod::Green;
  double error_estimate = 0.0;
};

struct TraceOptions {
  EngineOptions engine;
  PanelOptions panels;
  int gauss_nodes = 16;
  int check_nodes = 12;  // second rule for the quadrature error estimate
  double quad_rel_tol = 1e-9;
  int max_refinements = 3;
  double near_eigenvalue = 1e-6;  // threshold on the relative determinant
  double cauchy_radius = 0.5;     // ℓ ≥ 3: contour radius around λ
  int cauchy_points = 32;
};

/// Resolvent kernel of A_D − λ with respect to x^{m−1}dx, sampled on a node set:
/// G(x,y) = Σ yl_i(x) cl_i(y) for x < y and Σ yr_j(x) cr_j(y) for x > y.
struct GreenKernel {
  cplx lambda;
  int m = 0;
  std::vector<Panel> panels;
  NodeSet nodes;
  const GaussRule* rule = nullptr;
  std::vector<CVector> yl, yr, cl, cr;

  cplx diag(int i) const { return yl[i].transpose() * cl[i]; }
  cplx operator()(int i, int j) const;
};

/// Samples the kernel at the nodes of `panels` (rule must outlive the kernel).
GreenKernel green_kernel(const CharacteristicSystem& sys, cplx lambda, const std::vector<Panel>& panels,
                         const GaussRule& rule);

/// ∫ φ G(x,x) x^{m−1} dx including the analytic tip piece on (0, x_cut].
cplx trace_diagonal(const GreenKernel& k, const Polynomial& phi);
/// Tr(φ K1 K2) for two kernels on the same nodes, by semi-separable composition.
cplx trace_product(const GreenKernel& k1, const GreenKernel& k2, const Polynomial& phi);

TraceSample green_trace(const CharacteristicSystem& sys, cplx lambda, int ell, const Polynomial& phi,
                        const TraceOptions& opt = {});

/// Tr(φ (A_D − λ₁)^{-1}(A_D − λ₂)^{-1}).
TraceSample green_trace_product(const CharacteristicSystem& sys, cplx lambda1, cplx lambda2, const Polynomial& phi,
                                const TraceOptions& opt = {});

}  // namespace conetrace
