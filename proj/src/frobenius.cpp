#include "conetrace/frobenius.hpp"

#include <algorithm>
#include <cmath>

#include "conetrace/indicial.hpp"

namespace conetrace {

namespace {

double factorial_ratio(int n, int j) {  // (n+j)!/n!
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r *= n + i;
  return r;
}

void trim(std::vector<cplx>& v) {
  while (!v.empty() && v.back() == cplx{}) v.pop_back();
}

}  // namespace

std::vector<cplx> apply_log_polynomial(const Polynomial& p, cplx tau, const std::vector<cplx>& q) {
  const auto c = p.taylor_at(tau);
  std::vector<cplx> out(q.size(), 0.0);
  for (std::size_t n = 0; n < q.size(); ++n) {
    cplx mi = 1.0;
    for (std::size_t j = 0; j < c.size() && n + j < q.size(); ++j) {
      out[n] += c[j] * mi * q[n + j] * factorial_ratio(static_cast<int>(n), static_cast<int>(j));
      mi *= -kI;
    }
  }
  trim(out);
  return out;
}

std::vector<cplx> solve_log_polynomial(const Polynomial& p, cplx tau, int multiplicity, const std::vector<cplx>& rhs) {
  const auto c = p.taylor_at(tau);
  const int deg_r = static_cast<int>(rhs.size()) - 1;
  if (deg_r < 0) return {};
  const int pm = multiplicity;
  if (pm >= static_cast<int>(c.size()) || c[pm] == cplx{})
    throw Error(ErrorCode::VerificationFailed, "multiplicity exceeds the degree of the indicial polynomial");
  std::vector<cplx> q(deg_r + pm + 1, 0.0);
  std::vector<cplx> mi(c.size() + 1, 1.0);
  for (std::size_t j = 1; j < mi.size(); ++j) mi[j] = mi[j - 1] * (-kI);
  for (int n = deg_r; n >= 0; --n) {
    cplx acc = rhs[n];
    for (int j = pm + 1; j < static_cast<int>(c.size()) && n + j < static_cast<int>(q.size()); ++j)
      acc -= c[j] * mi[j] * q[n + j] * factorial_ratio(n, j);
    q[n + pm] = acc / (c[pm] * mi[pm] * factorial_ratio(n, pm));
  }
  return q;
}

LogPowerFunction FrobeniusSolution::as_function() const {
  LogPowerFunction f;
  for (std::size_t nu = 0; nu < series.size(); ++nu)
    if (!series[nu].empty()) f.accumulate(sigma0 - kI * static_cast<double>(nu), series[nu]);
  return f;
}

CVector FrobeniusSolution::euler_jet(double x, int count) const {
  CVector out = CVector::Zero(count);
  const double L = std::log(x);
  std::vector<cplx> q, dq;
  for (std::size_t nu = 0; nu < series.size(); ++nu) {
    if (series[nu].empty()) continue;
    const cplx itau = kI * (sigma0 - kI * static_cast<double>(nu));
    const cplx xp = std::exp(itau * L);
    q = series[nu];
    for (int j = 0; j < count; ++j) {
      cplx v = 0.0;
      for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) v = v * L + q[k];
      out(j) += xp * v;
      // (x∂_x)(x^{iτ} q(L)) = x^{iτ}(iτ q + q′)
      dq.assign(q.size(), 0.0);
      for (std::size_t k = 0; k < q.size(); ++k) {
        dq[k] = itau * q[k];
        if (k + 1 < q.size()) dq[k] += static_cast<double>(k + 1) * q[k + 1];
      }
      q.swap(dq);
    }
  }
  return out;
}

double FrobeniusSolution::tail_ratio(double x) const {
  const double L = std::abs(std::log(x));
  double biggest = 0.0, tail = 0.0;
  const int n = static_cast<int>(series.size());
  for (int nu = 0; nu < n; ++nu) {
    double mag = 0.0, lk = 1.0;
    for (const auto& c : series[nu]) {
      mag += std::abs(c) * lk;
      lk *= L;
    }
    mag *= std::pow(x, nu - sigma0.imag());
    biggest = std::max(biggest, mag);
    if (nu >= n - 3) tail = std::max(tail, mag);
  }
  return biggest > 0 ? tail / biggest : 0.0;
}

std::vector<FrobeniusSolution> frobenius_basis(const ConeOperator& a, cplx lambda, const FrobeniusOptions& opt) {
  const int m = a.order();
  if (!(opt.x_match > 0 && opt.x_match < 1)) throw Error(ErrorCode::OutOfRange, "x_match must lie in (0, 1)");
  if (opt.series_order < m + 4) throw Error(ErrorCode::OutOfRange, "series_order must be at least m + 4");
  const auto shifted = a.shifted(lambda);
  const int depth = shifted.depth();
  std::vector<Polynomial> P;
  for (int mu = 0; mu <= depth; ++mu) P.push_back(conormal_symbol(shifted, mu));
  const auto spec = boundary_spectrum(a);

  std::vector<FrobeniusSolution> out;
  for (const auto& root : spec) {
    for (int k0 = 0; k0 < root.multiplicity; ++k0) {
      FrobeniusSolution s;
      s.sigma0 = root.sigma;
      s.leading_log = k0;
      s.lambda = lambda;
      s.series.resize(opt.series_order + 1);
      s.series[0].assign(k0 + 1, 0.0);
      s.series[0][k0] = 1.0;
      s.log_depth = k0;
      for (int nu = 1; nu <= opt.series_order; ++nu) {
        const cplx tau = root.sigma - kI * static_cast<double>(nu);
        std::vector<cplx> rhs;
        for (int mu = 1; mu <= std::min(nu, depth); ++mu) {
          const auto& prev = s.series[nu - mu];
          if (prev.empty() || P[mu].is_zero()) continue;
          const auto term = apply_log_polynomial(P[mu], root.sigma - kI * static_cast<double>(nu - mu), prev);
          if (term.size() > rhs.size()) rhs.resize(term.size(), 0.0);
          for (std::size_t i = 0; i < term.size(); ++i) rhs[i] -= term[i];
        }
        trim(rhs);
        if (rhs.empty()) continue;
        const int p = root_multiplicity_at(spec, tau);
        auto q = solve_log_polynomial(P[0], tau, p, rhs);
        trim(q);
        if (static_cast<int>(q.size()) - 1 > opt.max_log_depth)
          throw Error(ErrorCode::ResonanceOverflow, "Frobenius series exceeds the configured log depth");
        s.log_depth = std::max(s.log_depth, static_cast<int>(q.size()) - 1);
        s.series[nu] = std::move(q);
      }
      out.push_back(std::move(s));
    }
  }
  if (static_cast<int>(out.size()) != m)
    throw Error(ErrorCode::VerificationFailed, "root multiplicities do not add up to the order");

  double x = opt.x_match;
  if (std::abs(lambda) > 0) x = std::min(x, 4.0 / std::pow(std::abs(lambda), 1.0 / m));
  for (int halvings = 0;; ++halvings) {
    bool ok = true;
    for (const auto& s : out)
      if (s.tail_ratio(x) > opt.rel_tol) ok = false;
    if (ok) break;
    if (halvings > 40) throw Error(ErrorCode::SeriesDivergence, "Frobenius series tail does not converge");
    x *= 0.5;
  }
  for (auto& s : out) s.radius = x;
  return out;
}

}  // namespace conetrace
