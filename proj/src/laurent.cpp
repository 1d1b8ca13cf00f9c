#include "conetrace/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace conetrace {

namespace {

void require_same_center(const LaurentExpansion& a, const LaurentExpansion& b) {
  if (std::abs(a.center() - b.center()) > 1e-9 * std::max(1.0, std::abs(a.center())))
    throw Error(ErrorCode::CenterMismatch, "Laurent expansions at different centers");
}

}  // namespace

LaurentExpansion::LaurentExpansion(cplx center, int lo, std::vector<cplx> coeffs)
    : center_(center), lo_(lo), c_(std::move(coeffs)) {}

LaurentExpansion LaurentExpansion::zero(cplx center, int hi) {
  return LaurentExpansion(center, 0, std::vector<cplx>(std::max(hi + 1, 0)));
}

cplx LaurentExpansion::operator[](int j) const {
  const int idx = j - lo_;
  return idx >= 0 && idx < static_cast<int>(c_.size()) ? c_[idx] : cplx{};
}

LaurentExpansion LaurentExpansion::canonical(double rel_tol) const {
  double scale = 0.0;
  for (const auto& c : c_) scale = std::max(scale, std::abs(c));
  LaurentExpansion out = *this;
  std::size_t drop = 0;
  while (out.lo_ + static_cast<int>(drop) < 0 && drop < out.c_.size() &&
         std::abs(out.c_[drop]) <= rel_tol * scale)
    ++drop;
  out.c_.erase(out.c_.begin(), out.c_.begin() + static_cast<long>(drop));
  out.lo_ += static_cast<int>(drop);
  return out;
}

LaurentExpansion LaurentExpansion::truncated(int new_hi) const {
  LaurentExpansion out = *this;
  if (new_hi < hi()) out.c_.resize(std::max(new_hi - lo_ + 1, 0));
  return out;
}

LaurentExpansion laurent_add(const LaurentExpansion& a, const LaurentExpansion& b) {
  require_same_center(a, b);
  const int lo = std::min(a.lo_, b.lo_);
  const int hi = std::min(a.hi(), b.hi());
  std::vector<cplx> c(std::max(hi - lo + 1, 0));
  for (int j = lo; j <= hi; ++j) c[j - lo] = a[j] + b[j];
  return LaurentExpansion(a.center_, lo, std::move(c));
}

LaurentExpansion laurent_mul(const LaurentExpansion& a, const LaurentExpansion& b) {
  require_same_center(a, b);
  const int lo = a.lo_ + b.lo_;
  const int hi = std::min(a.lo_ + b.hi(), a.hi() + b.lo_);
  std::vector<cplx> c(std::max(hi - lo + 1, 0));
  for (int i = a.lo_; i <= a.hi(); ++i)
    for (int j = b.lo_; j <= b.hi(); ++j)
      if (i + j <= hi) c[i + j - lo] += a[i] * b[j];
  return LaurentExpansion(a.center_, lo, std::move(c));
}

LaurentExpansion laurent_scale(cplx s, const LaurentExpansion& a) {
  std::vector<cplx> c;
  for (int j = a.lo(); j <= a.hi(); ++j) c.push_back(s * a[j]);
  return LaurentExpansion(a.center(), a.lo(), std::move(c));
}

LaurentExpansion singular_part(const LaurentExpansion& a) {
  // The holomorphic part of a singular part is identically zero, so the
  // result stays exact through a.hi().
  const int lo = std::min(a.lo(), -1);
  const int hi = std::max(a.hi(), -1);
  std::vector<cplx> c(hi - lo + 1);
  for (int j = lo; j <= -1; ++j) c[j - lo] = a[j];
  return LaurentExpansion(a.center(), lo, std::move(c));
}

LaurentExpansion shift_argument(const LaurentExpansion& a, cplx shift) {
  std::vector<cplx> c;
  for (int j = a.lo(); j <= a.hi(); ++j) c.push_back(a[j]);
  return LaurentExpansion(a.center() - shift, a.lo(), std::move(c));
}

LaurentExpansion laurent_of_polynomial(const Polynomial& p, cplx center, int hi) {
  auto t = p.taylor_at(center);
  t.resize(std::max(hi + 1, 0));
  return LaurentExpansion(center, 0, std::move(t));
}

LaurentExpansion laurent_inverse_of_polynomial(const Polynomial& p, cplx center, int hi, double root_tol) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "inverse of the zero polynomial");
  const auto t = p.taylor_at(center);
  double ref = 0.0;
  const double ac = std::max(1.0, std::abs(center));
  for (int k = 0; k < static_cast<int>(p.coeffs().size()); ++k)
    ref = std::max(ref, std::abs(p.coeffs()[k]) * std::pow(ac, k));
  int order = 0;
  while (order < static_cast<int>(t.size()) && std::abs(t[order]) <= root_tol * ref) ++order;

  // 1/P = h^{-order} / (t_order + t_{order+1} h + ...), inverted term by term.
  const int lo = -order;
  const int n = std::max(hi - lo + 1, 0);
  std::vector<cplx> q(n);
  auto tt = [&](int j) { return order + j < static_cast<int>(t.size()) ? t[order + j] : cplx{}; };
  for (int j = 0; j < n; ++j) {
    cplx s = j == 0 ? cplx{1.0} : cplx{};
    for (int i = 1; i <= j; ++i) s -= tt(i) * q[j - i];
    q[j] = s / tt(0);
  }
  return LaurentExpansion(center, lo, std::move(q));
}

LaurentExpansion mellin_cutoff(cplx sigma0, int k, int hi) {
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  const cplx lead = fact * (k % 2 == 0 ? 1.0 : -1.0) * std::pow(kI, k + 1);
  const int lo = -(k + 1);
  std::vector<cplx> c(std::max(hi - lo + 1, 1));
  c[0] = lead;
  return LaurentExpansion(sigma0, lo, std::move(c));
}

}  // namespace conetrace
