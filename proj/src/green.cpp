#include "conetrace/green.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "conetrace/integrator.hpp"

namespace conetrace {

const char* to_string(TraceMethod m) { return m == TraceMethod::Green ? "green" : "eigen"; }

cplx GreenKernel::operator()(int i, int j) const {
  if (i == j) return diag(i);
  if (nodes.x[i] < nodes.x[j]) return yl[i].transpose() * cl[j];
  return yr[i].transpose() * cr[j];
}

namespace {

struct Samples {
  std::vector<CVector> yl, yr, cl, cr;
};

Samples sample_kernel(const CharacteristicSystem& sys, cplx lambda, const std::vector<double>& xs) {
  const auto& a = sys.op();
  const int m = a.order();
  const auto tip = sys.tip_family(lambda);
  const CMatrix right = sys.right_kernel();
  const int pl = tip.count(), pr = static_cast<int>(right.cols());
  if (pl + pr != m)
    throw Error(ErrorCode::DomainCountMismatch, "admissible tip solutions and boundary conditions do not add up to m");
  const auto shifted = a.shifted(lambda);
  const double tol = sys.options().ode_rel_tol;
  const std::size_t n = xs.size();

  std::vector<CMatrix> YL(n), YR;
  std::vector<double> outer;
  std::size_t first_outer = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] <= tip.x_match) {
      YL[i] = tip.euler_jet(xs[i]);
    } else {
      if (first_outer == n) first_outer = i;
      outer.push_back(xs[i]);
    }
  }
  if (!outer.empty()) {
    const auto prop = propagate_euler(shifted, tip.euler_jet(tip.x_match), tip.x_match, outer, tol);
    for (std::size_t i = 0; i < prop.size(); ++i) YL[first_outer + i] = prop[i];
  }
  std::vector<double> down(xs.rbegin(), xs.rend());
  YR = propagate_euler(shifted, x_to_euler_jet(right, 1.0), 1.0, down, tol);
  std::reverse(YR.begin(), YR.end());

  Samples s;
  s.yl.resize(n);
  s.yr.resize(n);
  s.cl.resize(n);
  s.cr.resize(n);
  const cplx lead_phase = std::pow(-kI, m);
  for (std::size_t i = 0; i < n; ++i) {
    CMatrix phi(m, m);
    phi << -YL[i], YR[i];
    Eigen::VectorXd colnorm(m);
    for (int c = 0; c < m; ++c) {
      colnorm(c) = phi.col(c).norm();
      if (colnorm(c) == 0) throw Error(ErrorCode::NearEigenvalue, "vanishing solution column");
      phi.col(c) /= colnorm(c);
    }
    CVector rhs = CVector::Zero(m);
    rhs(m - 1) = 1.0 / (a.a(m, xs[i]) * lead_phase);
    CVector c = phi.partialPivLu().solve(rhs);
    for (int k = 0; k < m; ++k) c(k) /= colnorm(k);
    s.yl[i] = YL[i].row(0).transpose();
    s.yr[i] = YR[i].row(0).transpose();
    s.cl[i] = c.head(pl);
    s.cr[i] = c.tail(pr);
  }
  return s;
}

GreenKernel assemble(cplx lambda, int m, const std::vector<Panel>& panels, const GaussRule& rule) {
  GreenKernel k;
  k.lambda = lambda;
  k.m = m;
  k.panels = panels;
  k.nodes = panel_nodes(panels, rule);
  k.rule = &rule;
  return k;
}

// Pair of kernels on two rules over the same panels, from one set of integrations.
std::pair<GreenKernel, GreenKernel> kernel_pair(const CharacteristicSystem& sys, cplx lambda,
                                                const std::vector<Panel>& panels, const GaussRule& r1,
                                                const GaussRule& r2) {
  const int m = sys.op().order();
  auto k1 = assemble(lambda, m, panels, r1);
  auto k2 = assemble(lambda, m, panels, r2);
  std::vector<double> xs = k1.nodes.x;
  xs.insert(xs.end(), k2.nodes.x.begin(), k2.nodes.x.end());
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> sorted(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = xs[order[i]];
  const auto s = sample_kernel(sys, lambda, sorted);
  const std::size_t n1 = k1.nodes.x.size();
  for (auto* k : {&k1, &k2}) {
    const std::size_t n = k->nodes.x.size();
    k->yl.resize(n);
    k->yr.resize(n);
    k->cl.resize(n);
    k->cr.resize(n);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t src = order[i];
    GreenKernel& k = src < n1 ? k1 : k2;
    const std::size_t j = src < n1 ? src : src - n1;
    k.yl[j] = s.yl[i];
    k.yr[j] = s.yr[i];
    k.cl[j] = s.cl[i];
    k.cr[j] = s.cr[i];
  }
  return {std::move(k1), std::move(k2)};
}

// ∫_0^{x_cut} of a power-law continuation of g through the two lowest nodes.
cplx power_tail(double x1, cplx g1, double x2, cplx g2, double x_cut) {
  if (std::abs(g1) == 0.0) return 0.0;
  if (std::abs(g2) == 0.0) return 0.0;
  const double q = std::log(std::abs(g2) / std::abs(g1)) / std::log(x2 / x1);
  if (!(q > -1.0 + 1e-6)) throw Error(ErrorCode::QuadratureNotConverged, "integrand is not integrable at the tip");
  return g1 * std::pow(x_cut / x1, q) * x_cut / (q + 1.0);
}

double measure(double x, int m) { return std::pow(x, m - 1); }

}  // namespace

GreenKernel green_kernel(const CharacteristicSystem& sys, cplx lambda, const std::vector<Panel>& panels,
                         const GaussRule& rule) {
  auto k = assemble(lambda, sys.op().order(), panels, rule);
  const auto s = sample_kernel(sys, lambda, k.nodes.x);
  k.yl = s.yl;
  k.yr = s.yr;
  k.cl = s.cl;
  k.cr = s.cr;
  return k;
}

cplx trace_diagonal(const GreenKernel& k, const Polynomial& phi) {
  const auto& x = k.nodes.x;
  cplx sum = 0.0;
  std::vector<cplx> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = phi(x[i]) * measure(x[i], k.m) * k.diag(static_cast<int>(i));
    sum += k.nodes.weight[i] * g[i];
  }
  if (x.size() >= 2) sum += power_tail(x[0], g[0], x[1], g[1], k.panels.front().a);
  return sum;
}

cplx trace_product(const GreenKernel& k1, const GreenKernel& k2, const Polynomial& phi) {
  if (k1.nodes.x != k2.nodes.x) throw Error(ErrorCode::BadShape, "kernels live on different nodes");
  const auto& x = k1.nodes.x;
  const auto& w = k1.nodes.weight;
  const int n = k1.nodes.per_panel;
  const int npan = static_cast<int>(k1.panels.size());
  const int m = k1.m;
  const auto& S = k1.rule->cumulative;
  const int pl1 = static_cast<int>(k1.cl[0].size()), pr1 = static_cast<int>(k1.cr[0].size());
  const int pl2 = static_cast<int>(k2.cl[0].size()), pr2 = static_cast<int>(k2.cr[0].size());
  const std::size_t N = x.size();

  // f_lo(x) = φ μ yl1_i cr2_j (integrated from 0 up), f_hi(x) = φ μ yr1_i cl2_j (from 1 down)
  std::vector<CMatrix> flo(N), fhi(N);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx wgt = phi(x[i]) * measure(x[i], m);
    flo[i] = wgt * k1.yl[i] * k2.cr[i].transpose();
    fhi[i] = wgt * k1.yr[i] * k2.cl[i].transpose();
  }
  std::vector<CMatrix> Hlo(N, CMatrix::Zero(pl1, pr2)), Hhi(N, CMatrix::Zero(pr1, pl2));
  CMatrix acc = CMatrix::Zero(pl1, pr2);
  if (N >= 2)
    for (int i = 0; i < pl1; ++i)
      for (int j = 0; j < pr2; ++j)
        acc(i, j) = power_tail(x[0], flo[0](i, j), x[1], flo[1](i, j), k1.panels.front().a);
  for (int p = 0; p < npan; ++p) {
    const double half = 0.5 * (k1.panels[p].b - k1.panels[p].a);
    CMatrix full = CMatrix::Zero(pl1, pr2);
    for (int kk = 0; kk < n; ++kk) {
      CMatrix part = CMatrix::Zero(pl1, pr2);
      for (int l = 0; l < n; ++l) part += S[kk][l] * flo[p * n + l];
      Hlo[p * n + kk] = acc + half * part;
      full += w[p * n + kk] * flo[p * n + kk];
    }
    acc += full;
  }
  CMatrix acc_hi = CMatrix::Zero(pr1, pl2);
  for (int p = npan - 1; p >= 0; --p) {
    const double half = 0.5 * (k1.panels[p].b - k1.panels[p].a);
    CMatrix full = CMatrix::Zero(pr1, pl2);
    for (int kk = 0; kk < n; ++kk) full += w[p * n + kk] * fhi[p * n + kk];
    for (int kk = 0; kk < n; ++kk) {
      CMatrix part = CMatrix::Zero(pr1, pl2);
      for (int l = 0; l < n; ++l) part += S[kk][l] * fhi[p * n + l];
      Hhi[p * n + kk] = acc_hi + full - half * part;
    }
    acc_hi += full;
  }
  cplx sum = 0.0;
  std::vector<cplx> F(N);
  for (std::size_t i = 0; i < N; ++i) {
    // x < y: G1(x,y) G2(y,x) = Σ yl1_i(x) cl1_i(y) · yr2_j(y) cr2_j(x)
    cplx v = 0.0;
    for (int a = 0; a < pl1; ++a)
      for (int b = 0; b < pr2; ++b) v += k1.cl[i](a) * k2.yr[i](b) * Hlo[i](a, b);
    for (int a = 0; a < pr1; ++a)
      for (int b = 0; b < pl2; ++b) v += k1.cr[i](a) * k2.yl[i](b) * Hhi[i](a, b);
    F[i] = v * measure(x[i], m);
    sum += w[i] * F[i];
  }
  if (N >= 2) sum += power_tail(x[0], F[0], x[1], F[1], k1.panels.front().a);
  return sum;
}

namespace {

TraceSample quadrature_trace(const CharacteristicSystem& sys, cplx l1, cplx l2, bool product, const Polynomial& phi,
                             const TraceOptions& opt) {
  const int m = sys.op().order();
  for (cplx l : {l1, l2}) {
    const auto d = sys.det(l);
    if (d.relative() < opt.near_eigenvalue)
      throw Error(ErrorCode::NearEigenvalue, "lambda is too close to an eigenvalue");
  }
  const GaussRule r1 = gauss_legendre(opt.gauss_nodes);
  const GaussRule r2 = gauss_legendre(opt.check_nodes);
  PanelOptions popt = opt.panels;
  TraceSample best;
  best.lambda = l1;
  best.ell = product ? 2 : 1;
  for (int attempt = 0; attempt <= opt.max_refinements; ++attempt) {
    const auto panels = graded_panels(std::max(std::abs(l1), std::abs(l2)), m, popt);
    cplx v1, v2;
    if (!product) {
      const auto [ka, kb] = kernel_pair(sys, l1, panels, r1, r2);
      v1 = trace_diagonal(ka, phi);
      v2 = trace_diagonal(kb, phi);
    } else {
      const auto [ka, kb] = kernel_pair(sys, l1, panels, r1, r2);
      if (l2 == l1) {
        v1 = trace_product(ka, ka, phi);
        v2 = trace_product(kb, kb, phi);
      } else {
        const auto [kc, kd] = kernel_pair(sys, l2, panels, r1, r2);
        v1 = trace_product(ka, kc, phi);
        v2 = trace_product(kb, kd, phi);
      }
    }
    best.value = v1;
    best.error_estimate = std::abs(v1 - v2);
    if (best.error_estimate <= opt.quad_rel_tol * std::max(std::abs(v1), 1e-300)) {
      // the kernel columns carry the integrator's relative error
      best.error_estimate += opt.engine.ode_rel_tol * std::abs(v1);
      return best;
    }
    popt.beta *= 0.5;
    popt.gamma *= 0.5;
  }
  throw Error(ErrorCode::QuadratureNotConverged, "trace quadrature did not reach the requested tolerance");
}

}  // namespace

TraceSample green_trace(const CharacteristicSystem& sys, cplx lambda, int ell, const Polynomial& phi,
                        const TraceOptions& opt) {
  const int m = sys.op().order();
  if (ell < 1 || m * ell <= 1) throw Error(ErrorCode::OutOfRange, "need m·ell > 1");
  if (ell <= 2) {
    auto t = quadrature_trace(sys, lambda, lambda, ell == 2, phi, opt);
    t.ell = ell;
    return t;
  }
  // (A − λ)^{-ℓ} = (1/2πi)∮ (A − z)^{-1} (z − λ)^{-ℓ} dz on a small circle around λ
  double e_full = 0;
  // re-use samples: the half rule takes every other point
  const int n = opt.cauchy_points;
  std::vector<cplx> vals(n);
  std::vector<double> errs(n);
  for (int k = 0; k < n; ++k) {
    const cplx e = std::polar(1.0, 2 * kPi * k / n);
    const cplx z = lambda + opt.cauchy_radius * e;
    const auto t = quadrature_trace(sys, z, z, false, phi, opt);
    vals[k] = t.value * std::pow(opt.cauchy_radius * e, 1 - ell);
    errs[k] = t.error_estimate * std::pow(opt.cauchy_radius, 1 - ell);
  }
  cplx full = 0.0, half = 0.0;
  for (int k = 0; k < n; ++k) {
    full += vals[k];
    e_full += errs[k];
    if (k % 2 == 0) {
      half += vals[k];
    }
  }
  full /= static_cast<double>(n);
  half /= static_cast<double>(n / 2);
  TraceSample t;
  t.lambda = lambda;
  t.ell = ell;
  t.value = full;
  t.error_estimate = std::abs(full - half) + e_full / n;
  return t;
}

TraceSample green_trace_product(const CharacteristicSystem& sys, cplx lambda1, cplx lambda2, const Polynomial& phi,
                                const TraceOptions& opt) {
  auto t = quadrature_trace(sys, lambda1, lambda2, true, phi, opt);
  t.ell = 2;
  return t;
}

}  // namespace conetrace
