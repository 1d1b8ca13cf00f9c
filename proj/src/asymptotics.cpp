#include "conetrace/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <Eigen/SVD>

namespace conetrace {

std::vector<double> geometric_grid(double r_min, double r_max, int count) {
  if (!(r_min > 0 && r_max > r_min) || count < 2) throw Error(ErrorCode::OutOfRange, "need 0 < r_min < r_max and count ≥ 2");
  std::vector<double> g(count);
  const double q = std::log(r_max / r_min);
  for (int i = 0; i < count; ++i) g[i] = r_min * std::exp(q * i / (count - 1));
  g.back() = r_max;
  return g;
}

RaySamples sample_ray(const CharacteristicSystem& sys, int ell, const Polynomial& phi, double theta0, double r_min,
                      double r_max, int count, const TraceOptions& opt, int threads) {
  if (!check_parameter_ellipticity(sys.op(), Sector{theta0, 0.0}))
    throw Error(ErrorCode::SectorNotAdmissible, "ray meets the range of the principal symbol");
  if (sys.op().order() * ell <= 1) throw Error(ErrorCode::OutOfRange, "need m·ell > 1");
  const auto grid = geometric_grid(r_min, r_max, count);

  struct Slot {
    bool ok = false;
    TraceSample t;
    RayFailure f;
  };
  std::vector<Slot> slots(grid.size());
  auto work = [&](std::size_t i) {
    const cplx lambda = std::polar(grid[i], theta0);
    try {
      slots[i].t = green_trace(sys, lambda, ell, phi, opt);
      slots[i].ok = true;
    } catch (const Error& e) {
      slots[i].f = {grid[i], to_string(e.code()), e.what()};
    }
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
  if (nt == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) work(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < nt; ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < grid.size(); i += nt) work(i);
      }));
    for (auto& j : jobs) j.get();
  }
  RaySamples out;
  out.theta0 = theta0;
  out.ell = ell;
  out.phi = phi;
  out.domain_label = sys.domain().label;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slots[i].ok) {
      out.r.push_back(grid[i]);
      out.samples.push_back(slots[i].t);
    } else {
      out.failures.push_back(slots[i].f);
    }
  }
  return out;
}

std::vector<cplx> sample_values(const RaySamples& s) {
  std::vector<cplx> v;
  for (const auto& t : s.samples) v.push_back(t.value);
  return v;
}

const FitTerm* FitResult::find(int j, int k) const {
  for (const auto& t : terms)
    if (t.j == j && t.k == k) return &t;
  return nullptr;
}

cplx FitResult::alpha(int j, int k) const {
  const auto* t = find(j, k);
  return t ? t->alpha : cplx{};
}

cplx FitResult::operator()(double r) const {
  cplx s = 0.0;
  for (const auto& t : terms) s += t.alpha * std::pow(r, t.exponent) * std::pow(std::log(r), t.k);
  return s;
}

std::vector<BasisTerm> expansion_basis(int m, int ell, int J, const std::vector<int>& caps, double shift) {
  std::vector<BasisTerm> b;
  for (int j = 0; j <= J; ++j) {
    const int cap = j < static_cast<int>(caps.size()) ? caps[j] : 0;
    for (int k = 0; k <= cap; ++k) b.push_back({j, k, (1.0 - j) / m - ell + shift});
  }
  return b;
}

namespace {

struct RawFit {
  CVector coef;
  CVector sigma;
  double residual = 0.0;
  double condition = 0.0;
};

RawFit solve_ls(const std::vector<double>& r, const std::vector<cplx>& v, const std::vector<BasisTerm>& basis,
                double condition_limit) {
  const int n = static_cast<int>(r.size()), p = static_cast<int>(basis.size());
  if (n < p) throw Error(ErrorCode::OutOfRange, "fewer samples than model terms");
  CMatrix A(n, p);
  CVector b(n);
  for (int i = 0; i < n; ++i) {
    const double w = std::abs(v[i]) > 0 ? 1.0 / std::abs(v[i]) : 1.0;
    const double L = std::log(r[i]);
    for (int c = 0; c < p; ++c) A(i, c) = w * std::pow(r[i], basis[c].exponent) * std::pow(L, basis[c].k);
    b(i) = w * v[i];
  }
  Eigen::VectorXd scale(p);
  for (int c = 0; c < p; ++c) {
    scale(c) = A.col(c).norm();
    if (scale(c) == 0) scale(c) = 1;
    A.col(c) /= scale(c);
  }
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  RawFit f;
  f.condition = s(p - 1) > 0 ? s(0) / s(p - 1) : INFINITY;
  if (f.condition > condition_limit) throw Error(ErrorCode::IllConditioned, "fit condition number above the limit");
  CVector x = svd.solve(b);
  const CVector res = A * x - b;
  f.residual = res.norm() / std::sqrt(static_cast<double>(n));
  const double dof_res = n > p ? res.norm() / std::sqrt(static_cast<double>(n - p)) : 0.0;
  f.sigma = CVector(p);
  const CMatrix& V = svd.matrixV();
  for (int c = 0; c < p; ++c) {
    double var = 0.0;
    for (int q = 0; q < p; ++q) var += std::norm(V(c, q)) / (s(q) * s(q));
    f.sigma(c) = dof_res * std::sqrt(var) / scale(c);
  }
  for (int c = 0; c < p; ++c) x(c) /= scale(c);
  f.coef = x;
  return f;
}

FitResult package(const std::vector<BasisTerm>& basis, const RawFit& raw) {
  FitResult out;
  for (std::size_t c = 0; c < basis.size(); ++c)
    out.terms.push_back({basis[c].j, basis[c].k, basis[c].exponent, raw.coef(c), raw.sigma(c).real()});
  std::stable_sort(out.terms.begin(), out.terms.end(),
                   [](const FitTerm& a, const FitTerm& b) { return a.j != b.j ? a.j < b.j : a.k < b.k; });
  int jmax = -1;
  for (const auto& t : out.terms) jmax = std::max(jmax, t.j);
  out.m_caps.assign(jmax + 1, -1);
  for (const auto& t : out.terms) out.m_caps[t.j] = std::max(out.m_caps[t.j], t.k);
  out.residual_norm = raw.residual;
  out.condition = raw.condition;
  return out;
}

// Peeling: strictly increasing j, each group fitted together with the next two
// groups on the upper two thirds of the remaining r-range, then subtracted.
FitResult peeled_fit(const std::vector<double>& r, std::vector<cplx> v, const std::vector<BasisTerm>& basis,
                     double condition_limit) {
  const std::vector<cplx> orig = v;
  std::vector<int> js;
  for (const auto& b : basis)
    if (std::find(js.begin(), js.end(), b.j) == js.end()) js.push_back(b.j);
  std::sort(js.begin(), js.end());
  std::vector<BasisTerm> kept_basis;
  std::vector<cplx> kept, kept_sigma;
  double cond = 0.0;
  const std::size_t n = r.size();
  for (std::size_t g = 0; g < js.size(); ++g) {
    std::vector<BasisTerm> model;
    for (const auto& b : basis)
      if (b.j >= js[g] && b.j <= js[std::min(g + 2, js.size() - 1)]) model.push_back(b);
    const bool last = g + 3 > js.size();
    const std::size_t start = last ? 0 : n / 3;
    std::vector<double> rw(r.begin() + start, r.end());
    std::vector<cplx> vw(v.begin() + start, v.end());
    const auto raw = solve_ls(rw, vw, model, condition_limit);
    cond = std::max(cond, raw.condition);
    for (std::size_t c = 0; c < model.size(); ++c) {
      if (model[c].j != js[g] && !last) continue;
      kept_basis.push_back(model[c]);
      kept.push_back(raw.coef(c));
      kept_sigma.push_back(raw.sigma(c));
      for (std::size_t i = 0; i < n; ++i)
        v[i] -= raw.coef(c) * std::pow(r[i], model[c].exponent) * std::pow(std::log(r[i]), model[c].k);
    }
    if (last) break;
  }
  RawFit f;
  f.coef = CVector(kept.size());
  f.sigma = CVector(kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    f.coef(c) = kept[c];
    f.sigma(c) = kept_sigma[c];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(orig[i]) > 0 ? std::norm(v[i]) / std::norm(orig[i]) : std::norm(v[i]);
  f.residual = std::sqrt(acc / n);
  f.condition = cond;
  auto out = package(kept_basis, f);
  out.peeled = true;
  return out;
}

}  // namespace

std::vector<double> window_drift(const std::vector<double>& r, const std::vector<cplx>& v,
                                 const std::vector<BasisTerm>& basis) {
  const std::size_t n = r.size(), p = basis.size();
  const std::size_t w = n / 2, step = std::max<std::size_t>(1, n / 4);
  if (w < p + 2) return {};
  std::vector<CVector> fits;
  for (std::size_t start = 0; start + w <= n; start += step) {
    std::vector<double> rw(r.begin() + start, r.begin() + start + w);
    std::vector<cplx> vw(v.begin() + start, v.begin() + start + w);
    fits.push_back(solve_ls(rw, vw, basis, 1e300).coef);
  }
  std::vector<double> drift(p, 0.0);
  for (std::size_t a = 0; a < fits.size(); ++a)
    for (std::size_t b = a + 1; b < fits.size(); ++b)
      for (std::size_t c = 0; c < p; ++c) drift[c] = std::max(drift[c], std::abs(fits[a](c) - fits[b](c)));
  return drift;
}

FitResult fit_basis(const std::vector<double>& r_all, const std::vector<cplx>& v_all,
                    const std::vector<BasisTerm>& basis, const FitOptions& opt) {
  if (r_all.size() != v_all.size()) throw Error(ErrorCode::BadShape, "sample arrays differ in length");
  std::vector<double> r;
  std::vector<cplx> v;
  for (std::size_t i = 0; i < r_all.size(); ++i)
    if (r_all[i] >= opt.r_min && r_all[i] <= opt.r_max) {
      r.push_back(r_all[i]);
      v.push_back(v_all[i]);
    }
  if (r.size() < 2 * basis.size()) throw Error(ErrorCode::OutOfRange, "need at least twice as many samples as model terms");
  FitResult out;
  try {
    out = package(basis, solve_ls(r, v, basis, opt.condition_limit));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IllConditioned || !opt.peel) throw;
    out = peeled_fit(r, v, basis, opt.condition_limit);
  }
  if (opt.drift) {
    const auto d = window_drift(r, v, basis);
    // match sorted term order
    out.window_drift.assign(out.terms.size(), 0.0);
    if (!d.empty())
      for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t t = 0; t < out.terms.size(); ++t)
          if (out.terms[t].j == basis[c].j && out.terms[t].k == basis[c].k) out.window_drift[t] = d[c];
  }
  return out;
}

FitResult fit_expansion(const RaySamples& s, int m, int J, const std::vector<int>& caps, const FitOptions& opt) {
  return fit_basis(s.r, sample_values(s), expansion_basis(m, s.ell, J, caps), opt);
}

LogDetection detect_logs(const std::vector<double>& r, const std::vector<cplx>& v, int m, int ell, int J,
                         std::vector<int> caps, int j, double threshold, int k_max, const FitOptions& opt) {
  constexpr double kNoiseFloor = 1e-11;
  if (static_cast<int>(caps.size()) <= J) caps.resize(J + 1, 0);
  if (j > J) throw Error(ErrorCode::OutOfRange, "order j beyond the fitted model");
  FitOptions o = opt;
  o.drift = false;
  LogDetection det;
  for (int k = 1; k <= k_max; ++k) {
    caps[j] = k - 1;
    const double lo = fit_basis(r, v, expansion_basis(m, ell, J, caps), o).residual_norm;
    if (lo < kNoiseFloor) break;
    caps[j] = k;
    const double hi = fit_basis(r, v, expansion_basis(m, ell, J, caps), o).residual_norm;
    const double ratio = lo / std::max(hi, 1e-300);
    det.ratios.push_back(ratio);
    if (ratio >= threshold) {
      det.m_j = k;
      continue;
    }
    if (ratio > std::sqrt(threshold))
      throw Error(ErrorCode::Inconclusive, "residual reduction straddles the detection threshold");
    break;
  }
  return det;
}

DomainComparison compare_domains(const FitResult& a, const FitResult& b, int n) {
  DomainComparison out;
  for (const auto& t : a.terms) {
    const auto* u = b.find(t.j, t.k);
    if (!u) continue;
    CoefficientComparison c;
    c.j = t.j;
    c.k = t.k;
    c.a = t.alpha;
    c.b = u->alpha;
    c.delta = std::abs(t.alpha - u->alpha);
    c.must_agree = t.j < n || (t.j == n && t.k == 1);
    if (c.must_agree) out.max_required_delta = std::max(out.max_required_delta, c.delta);
    out.rows.push_back(c);
  }
  return out;
}

}  // namespace conetrace
