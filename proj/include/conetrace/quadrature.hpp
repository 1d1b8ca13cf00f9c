#pragma once

#include <vector>

#include "conetrace/types.hpp"

namespace conetrace {

struct GaussRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;
  /// cumulative[k][l] = ∫_{-1}^{nodes[k]} ℓ_l(t) dt for the Lagrange basis ℓ_l.
  std::vector<std::vector<double>> cumulative;
};

/// n-point Gauss–Legendre rule (Newton on P_n), with its cumulative integration matrix.
GaussRule gauss_legendre(int n);

struct Panel {
  double a = 0.0;
  double b = 0.0;
};

struct PanelOptions {
  double x_cut = 1e-6;
  double beta = 0.5;   // geometric grading: panel width ≤ beta·x
  double gamma = 1.0;  // resolution: panel width ≤ gamma/|λ|^{1/m}
};

/// Panels covering [x_cut, 1], ascending in x. Widths shrink toward 0
/// geometrically and are capped at the oscillation/decay scale |λ|^{-1/m}.
std::vector<Panel> graded_panels(double lambda_abs, int m, const PanelOptions& opt = {});

struct NodeSet {
  std::vector<double> x;       // ascending
  std::vector<double> weight;  // dx weights
  std::vector<int> panel;      // panel index of each node
  int per_panel = 0;
};

NodeSet panel_nodes(const std::vector<Panel>& panels, const GaussRule& rule);

}  // namespace conetrace
