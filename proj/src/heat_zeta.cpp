#include "conetrace/heat_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace conetrace {

double rgamma(double s) {
  if (s <= 0 && std::abs(s - std::round(s)) < 1e-12) return 0.0;
  return 1.0 / std::tgamma(s);
}

WeylTail fit_weyl(const std::vector<double>& eigs, int m, int window, int skip_from_end) {
  const int n = static_cast<int>(eigs.size());
  const int hi = n - skip_from_end;
  const int lo = std::max(0, hi - window);
  if (hi - lo < 2) throw Error(ErrorCode::OutOfRange, "need at least two eigenvalues for the Weyl fit");
  double sk = 0, sy = 0, skk = 0, sky = 0;
  const int cnt = hi - lo;
  for (int i = lo; i < hi; ++i) {
    const double k = i + 1;
    const double y = std::copysign(std::pow(std::abs(eigs[i]), 1.0 / m), eigs[i]);
    sk += k;
    sy += y;
    skk += k * k;
    sky += k * y;
  }
  const double slope = (cnt * sky - sk * sy) / (cnt * skk - sk * sk);
  const double icept = (sy - slope * sk) / cnt;
  WeylTail w;
  w.m = m;
  w.c = slope;
  w.delta = icept / slope;
  w.first = n + 1;
  return w;
}

namespace {

using Fn = std::function<cplx(double)>;

cplx model_tail(const WeylTail& w, const Fn& f, int explicit_terms, double* em_bound) {
  cplx acc = 0.0;
  int k = w.first;
  const int stop = w.first + explicit_terms;
  for (; k < stop; ++k) {
    const cplx v = f(w.mu(k));
    acc += v;
    if (std::abs(v) < 1e-18 * std::max(std::abs(acc), 1e-300) && k > w.first + 10) {
      ++k;
      break;
    }
  }
  // Σ_{k ≥ K} f ≈ ∫_{K−½}^∞ f (midpoint Euler–Maclaurin)
  const double a = k - 0.5;
  boost::math::quadrature::exp_sinh<double> integ;
  auto g = [&](double kk, bool im) {
    const cplx v = f(w.mu(kk));
    return im ? v.imag() : v.real();
  };
  const double re = integ.integrate([&](double kk) { return g(kk, false); }, a, INFINITY);
  const double im = integ.integrate([&](double kk) { return g(kk, true); }, a, INFINITY);
  if (em_bound) {
    const double h = 1e-3;
    const cplx d1 = (f(w.mu(a + h)) - f(w.mu(a - h))) / (2 * h);
    *em_bound = std::abs(d1) / 24.0;
  }
  return acc + cplx(re, im);
}

SpectralSum spectral_sum(const std::vector<double>& eigs, int m, const Fn& f, const TailOptions& opt) {
  SpectralSum s;
  cplx direct = 0.0;
  double eig_err = 0.0;  // first-order effect of eigenvalue uncertainty
  for (double mu : eigs) {
    direct += f(mu);
    const double h = 1e-6 * std::abs(mu);
    eig_err += std::abs(f(mu + h) - f(mu - h)) / (2 * h) * std::abs(mu) * opt.eig_rel_error;
  }
  const int n = static_cast<int>(eigs.size());
  double em = 0.0;
  const WeylTail wa = fit_weyl(eigs, m, opt.window, 0);
  s.tail = model_tail(wa, f, opt.explicit_terms, &em);
  double spread = 0.0;
  if (n >= 2 * opt.window) {
    WeylTail wb = fit_weyl(eigs, m, opt.window, opt.window);
    wb.first = wa.first;
    spread = std::abs(model_tail(wb, f, opt.explicit_terms, nullptr) - s.tail);
  }
  s.value = direct + s.tail;
  s.error_estimate = spread + em + eig_err + 1e-15 * std::abs(s.value);
  if (s.error_estimate > opt.tolerance)
    throw Error(ErrorCode::TailDominates, "eigenvalue tail uncertainty exceeds the tolerance");
  return s;
}

}  // namespace

TraceSample eigen_trace(const std::vector<double>& eigs, int m, cplx lambda, int ell, const TailOptions& opt) {
  if (m * ell <= 1) throw Error(ErrorCode::OutOfRange, "need m·ell > 1");
  const auto s = spectral_sum(eigs, m, [&](double mu) { return std::pow(mu - lambda, -ell); }, opt);
  TraceSample t;
  t.lambda = lambda;
  t.ell = ell;
  t.value = s.value;
  t.method = TraceMethod::Eigen;
  t.error_estimate = s.error_estimate;
  return t;
}

std::vector<HeatSample> heat_trace(const std::vector<double>& eigs, int m, const std::vector<double>& t_grid,
                                   const TailOptions& opt) {
  std::vector<HeatSample> out;
  for (double t : t_grid) {
    if (!(t > 0)) throw Error(ErrorCode::OutOfRange, "heat times must be positive");
    const auto s = spectral_sum(eigs, m, [&](double mu) { return cplx(std::exp(-t * mu)); }, opt);
    out.push_back({t, s.value.real(), s.error_estimate});
  }
  return out;
}

std::vector<BasisTerm> heat_basis(int m, int J, const std::vector<int>& caps, const std::vector<double>& probes) {
  std::vector<BasisTerm> b;
  for (int j = 0; j <= J; ++j) {
    const double e = (j - 1.0) / m;
    b.push_back({j, 0, e});
    const int cap = j >= 2 && j < static_cast<int>(caps.size()) ? caps[j] : 0;
    for (int k = 1; k <= cap; ++k) b.push_back({j, k, e});
  }
  for (double p : probes) b.push_back({-1, 0, p});
  return b;
}

FitResult fit_heat(const std::vector<HeatSample>& samples, int m, int J, const std::vector<int>& caps,
                   const std::vector<double>& probes, const FitOptions& opt) {
  std::vector<double> t;
  std::vector<cplx> v;
  for (const auto& s : samples) {
    t.push_back(s.t);
    v.push_back(s.value);
  }
  return fit_basis(t, v, heat_basis(m, J, caps, probes), opt);
}

double zeta_direct(const std::vector<double>& eigs, int m, double s, const TailOptions& opt, double* err) {
  if (!(s * m > 1.0)) throw Error(ErrorCode::OutOfRange, "direct zeta sum needs s > 1/m");
  for (double mu : eigs)
    if (!(mu > 0)) throw Error(ErrorCode::OutOfRange, "zeta needs positive eigenvalues");
  const auto r = spectral_sum(eigs, m, [&](double mu) { return cplx(std::pow(mu, -s)); }, opt);
  if (err) *err = r.error_estimate;
  return r.value.real();
}

namespace {

bool nonpositive_integer(double s) { return s <= 1e-12 && std::abs(s - std::round(s)) < 1e-12; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// ∫_0^T t^{β−1} log^k t dt
double mellin_power_log(double beta, int k, double T) {
  const double L = std::log(T);
  double acc = 0.0;
  for (int i = 0; i <= k; ++i)
    acc += ((i % 2) ? -1.0 : 1.0) * factorial(k) / factorial(k - i) * std::pow(L, k - i) / std::pow(beta, i + 1);
  return std::pow(T, beta) * acc;
}

}  // namespace

ZetaReport zeta_report(const std::vector<double>& eigs, int m, const FitResult& heat_fit,
                       const std::vector<double>& s_grid, const ZetaOptions& opt) {
  ZetaReport rep;
  for (const auto& t : heat_fit.terms) {
    PoleEntry p;
    p.s = -t.exponent;
    p.j = t.j;
    p.k = t.k;
    const double a = t.alpha.real();
    if (t.j < 0) {
      p.order = 1;
      p.residue = a * rgamma(p.s);
      p.uncertainty = t.sigma * std::abs(rgamma(p.s));
      p.status = "probe";
      rep.poles.push_back(p);
      continue;
    }
    const double c = ((t.k % 2) ? -1.0 : 1.0) * factorial(t.k);
    if (nonpositive_integer(p.s)) {
      const int n = static_cast<int>(std::lround(-p.s));
      const double drg = ((n % 2) ? -1.0 : 1.0) * factorial(n);  // (1/Γ)'(−n)
      p.order = t.k;
      p.residue = t.k == 0 ? 0.0 : a * c * drg;
      p.uncertainty = t.k == 0 ? 0.0 : t.sigma * std::abs(c * drg);
    } else {
      p.order = t.k + 1;
      p.residue = a * c * rgamma(p.s);
      p.uncertainty = t.sigma * std::abs(c * rgamma(p.s));
    }
    if (p.order == 0)
      p.status = "cancelled";
    else if (p.uncertainty > opt.residue_tol)
      p.status = "unresolved";
    else if (std::abs(p.residue) <= opt.residue_tol)
      p.status = "none";
    else
      p.status = "pole";
    rep.poles.push_back(p);
  }

  auto heat_at = [&](double t) { return heat_trace(eigs, m, {t}, opt.tail).front().value; };
  auto model_at = [&](double t) {
    double v = 0.0;
    for (const auto& term : heat_fit.terms)
      if (term.j >= 0) v += term.alpha.real() * std::pow(t, term.exponent) * std::pow(std::log(t), term.k);
    return v;
  };

  for (double s : s_grid) {
    ZetaValue zv;
    zv.s = s;
    if (s * m > 1.0 + 1e-12) {
      zv.value = zeta_direct(eigs, m, s, opt.tail, &zv.error_estimate);
      zv.method = "direct";
      rep.values.push_back(zv);
      continue;
    }
    zv.method = "continuation";
    double finite = 0.0, singular = 0.0, err = 0.0;
    bool pole = false;
    for (const auto& term : heat_fit.terms) {
      if (term.j < 0) continue;
      const double a = term.alpha.real();
      const double beta = s + term.exponent;
      if (std::abs(beta) < 1e-12) {
        if (nonpositive_integer(s) && term.k == 0) {
          const int n = static_cast<int>(std::lround(-s));
          singular += a * ((n % 2) ? -1.0 : 1.0) * factorial(n);
          err += term.sigma * factorial(n);
        } else if (std::abs(a) > opt.residue_tol) {
          pole = true;
        }
        continue;
      }
      const double mv = mellin_power_log(beta, term.k, opt.split);
      finite += a * mv;
      err += term.sigma * std::abs(mv);
    }
    if (pole) {
      zv.value = NAN;
      zv.method = "pole";
      rep.values.push_back(zv);
      continue;
    }
    const double rg = rgamma(s);
    if (rg != 0.0) {
      boost::math::quadrature::exp_sinh<double> upper;
      const double up = upper.integrate([&](double t) { return std::pow(t, s - 1) * heat_at(t); }, opt.split, INFINITY);
      const double mid = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [&](double t) { return std::pow(t, s - 1) * (heat_at(t) - model_at(t)); }, opt.t_floor, opt.split, 8, 1e-12);
      finite += up + mid;
    }
    zv.value = rg * finite + singular;
    zv.error_estimate = std::abs(rg) * err + (rg == 0.0 ? err : 0.0);
    rep.values.push_back(zv);
  }
  return rep;
}

}  // namespace conetrace
