#include "conetrace/log_power.hpp"

#include <algorithm>
#include <cmath>

namespace conetrace {

bool same_exponent(cplx a, cplx b) {
  return std::abs(a - b) <= LogPowerFunction::kExponentTol * std::max(1.0, std::abs(a));
}

LogPowerFunction LogPowerFunction::monomial(cplx exponent, int log_power, cplx coeff) {
  std::vector<cplx> c(log_power + 1);
  c[log_power] = coeff;
  return block(exponent, std::move(c));
}

LogPowerFunction LogPowerFunction::block(cplx exponent, std::vector<cplx> coeffs) {
  LogPowerFunction f;
  f.terms_.push_back({exponent, std::move(coeffs)});
  f.canonicalize();
  return f;
}

void LogPowerFunction::canonicalize() {
  for (auto& t : terms_) {
    while (!t.coeffs.empty() && t.coeffs.back() == cplx{}) t.coeffs.pop_back();
  }
  std::erase_if(terms_, [](const LogPowerTerm& t) { return t.coeffs.empty(); });
  std::sort(terms_.begin(), terms_.end(), [](const LogPowerTerm& a, const LogPowerTerm& b) {
    if (!same_exponent(cplx(0.0, a.exponent.imag()), cplx(0.0, b.exponent.imag())))
      return a.exponent.imag() < b.exponent.imag();
    return a.exponent.real() < b.exponent.real();
  });
}

void LogPowerFunction::accumulate(cplx exponent, const std::vector<cplx>& coeffs) {
  for (auto& t : terms_) {
    if (same_exponent(t.exponent, exponent)) {
      if (t.coeffs.size() < coeffs.size()) t.coeffs.resize(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) t.coeffs[k] += coeffs[k];
      canonicalize();
      return;
    }
  }
  terms_.push_back({exponent, coeffs});
  canonicalize();
}

std::vector<cplx> LogPowerFunction::coeffs_at(cplx exponent) const {
  for (const auto& t : terms_)
    if (same_exponent(t.exponent, exponent)) return t.coeffs;
  return {};
}

cplx LogPowerFunction::coeff(cplx exponent, int log_power) const {
  const auto c = coeffs_at(exponent);
  return log_power < static_cast<int>(c.size()) ? c[log_power] : cplx{};
}

LogPowerFunction& LogPowerFunction::operator+=(const LogPowerFunction& other) {
  for (const auto& t : other.terms_) accumulate(t.exponent, t.coeffs);
  return *this;
}

LogPowerFunction& LogPowerFunction::operator-=(const LogPowerFunction& other) {
  for (const auto& t : other.terms_) {
    std::vector<cplx> neg = t.coeffs;
    for (auto& c : neg) c = -c;
    accumulate(t.exponent, neg);
  }
  return *this;
}

LogPowerFunction& LogPowerFunction::operator*=(cplx s) {
  for (auto& t : terms_)
    for (auto& c : t.coeffs) c *= s;
  canonicalize();
  return *this;
}

LogPowerFunction LogPowerFunction::times_power(int nu) const {
  LogPowerFunction out = *this;
  for (auto& t : out.terms_) t.exponent -= kI * static_cast<double>(nu);
  return out;
}

LogPowerFunction LogPowerFunction::apply_xD() const {
  // (xD_x)(x^{iσ} log^j x) = σ x^{iσ} log^j x − i j x^{iσ} log^{j−1} x
  LogPowerFunction out;
  for (const auto& t : terms_) {
    const std::size_t n = t.coeffs.size();
    std::vector<cplx> c(n);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = t.exponent * t.coeffs[j];
      if (j + 1 < n) c[j] += -kI * static_cast<double>(j + 1) * t.coeffs[j + 1];
    }
    out.terms_.push_back({t.exponent, std::move(c)});
  }
  out.canonicalize();
  return out;
}

std::vector<cplx> LogPowerFunction::euler_jet(double x, int count) const {
  std::vector<cplx> jet;
  jet.reserve(count);
  LogPowerFunction g = *this;
  for (int j = 0; j < count; ++j) {
    jet.push_back(g(x));
    // x∂_x = i·xD_x
    g = g.apply_xD();
    g *= kI;
  }
  return jet;
}

LogPowerFunction LogPowerFunction::kappa(double rho, int m) const {
  const double lr = std::log(rho);
  LogPowerFunction out;
  for (const auto& t : terms_) {
    const cplx factor = std::exp((0.5 * m + kI * t.exponent) * lr);
    const std::size_t n = t.coeffs.size();
    std::vector<cplx> c(n);
    // (log x + log ρ)^k = Σ_j C(k,j) (log ρ)^{k−j} log^j x
    for (std::size_t k = 0; k < n; ++k) {
      double binom = 1.0;
      for (std::size_t j = k + 1; j-- > 0;) {
        c[j] += factor * t.coeffs[k] * binom * std::pow(lr, static_cast<double>(k - j));
        if (j > 0) binom = binom * static_cast<double>(j) / static_cast<double>(k - j + 1);
      }
    }
    out.terms_.push_back({t.exponent, std::move(c)});
  }
  out.canonicalize();
  return out;
}

cplx LogPowerFunction::operator()(double x) const {
  const double L = std::log(x);
  cplx acc{};
  for (const auto& t : terms_) {
    cplx poly{};
    for (auto it = t.coeffs.rbegin(); it != t.coeffs.rend(); ++it) poly = poly * L + *it;
    acc += std::exp(kI * t.exponent * L) * poly;
  }
  return acc;
}

double LogPowerFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_)
    for (const auto& c : t.coeffs) m = std::max(m, std::abs(c));
  return m;
}

LogPowerFunction LogPowerFunction::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  LogPowerFunction out = *this;
  for (auto& t : out.terms_)
    for (auto& c : t.coeffs)
      if (std::abs(c) <= cut) c = cplx{};
  out.canonicalize();
  return out;
}

}  // namespace conetrace
