#include "conetrace/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace conetrace {

namespace {

// P_0..P_n at t.
std::vector<double> legendre_values(int n, double t) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = t;
  for (int k = 1; k < n; ++k) p[k + 1] = ((2 * k + 1) * t * p[k] - k * p[k - 1]) / (k + 1);
  return p;
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "Gauss rule needs at least one node");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto p = legendre_values(n, t);
      const double dp = n * (t * p[n] - p[n - 1]) / (t * t - 1.0);
      const double dt = p[n] / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const auto p = legendre_values(n, t);
    const double dp = n * (t * p[n] - p[n - 1]) / (t * t - 1.0);
    r.nodes[n - 1 - i] = t;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  // ℓ_l(t) = w_l Σ_{k<n} (2k+1)/2 P_k(x_l) P_k(t), exact on Gauss nodes.
  r.cumulative.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> pn(n);
  for (int i = 0; i < n; ++i) pn[i] = legendre_values(n, r.nodes[i]);
  for (int k = 0; k < n; ++k) {
    const auto& pk = pn[k];
    for (int l = 0; l < n; ++l) {
      double s = 0.5 * (r.nodes[k] + 1.0);
      for (int j = 1; j < n; ++j) s += 0.5 * pn[l][j] * (pk[j + 1] - pk[j - 1]);
      r.cumulative[k][l] = r.weights[l] * s;
    }
  }
  return r;
}

std::vector<Panel> graded_panels(double lambda_abs, int m, const PanelOptions& opt) {
  const double scale = lambda_abs > 0 ? opt.gamma / std::pow(lambda_abs, 1.0 / m) : 1.0;
  std::vector<Panel> down;
  double x = 1.0;
  while (x > opt.x_cut * (1 + 1e-12)) {
    double h = std::min(opt.beta * x, scale);
    double lo = x - h;
    if (lo < opt.x_cut * 1.5) lo = opt.x_cut;
    down.push_back({lo, x});
    x = lo;
  }
  std::reverse(down.begin(), down.end());
  return down;
}

NodeSet panel_nodes(const std::vector<Panel>& panels, const GaussRule& rule) {
  NodeSet ns;
  ns.per_panel = static_cast<int>(rule.nodes.size());
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double half = 0.5 * (panels[p].b - panels[p].a);
    const double mid = 0.5 * (panels[p].b + panels[p].a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      ns.x.push_back(mid + half * rule.nodes[i]);
      ns.weight.push_back(half * rule.weights[i]);
      ns.panel.push_back(static_cast<int>(p));
    }
  }
  return ns;
}

}  // namespace conetrace
