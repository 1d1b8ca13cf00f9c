#include "conetrace/cone_operator.hpp"

#include <algorithm>
#include <cmath>

namespace conetrace {

namespace {

constexpr int kValidationGrid = 101;

double table_scale(const ConeOperator::Table& t) {
  double s = 0.0;
  for (const auto& row : t)
    for (const auto& c : row) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

BoundaryCondition BoundaryCondition::dirichlet(int m) {
  BoundaryCondition bc;
  const int r = m / 2;
  bc.rows = CMatrix::Zero(r, m);
  for (int i = 0; i < r; ++i) bc.rows(i, i) = 1.0;
  return bc;
}

cplx ConeOperator::coeff(int k, int nu) const {
  if (k < 0 || k > m_ || nu < 0 || nu > depth()) return {};
  return coeff_[k][nu];
}

cplx ConeOperator::a(int k, cplx x) const {
  cplx acc{};
  const auto& row = coeff_[k];
  for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ConeOperator ConeOperator::with_depth(int depth) const {
  Table t = coeff_;
  for (auto& row : t) row.resize(depth + 1);
  return ConeOperator(m_, std::move(t), bc_);
}

ConeOperator ConeOperator::shifted(cplx lambda) const {
  ConeOperator out = depth() < m_ ? with_depth(m_) : *this;
  out.coeff_[0][m_] -= lambda;
  return out;
}

ConeOperator ConeOperator::negated() const {
  Table t = coeff_;
  for (auto& row : t)
    for (auto& c : row) c = -c;
  return ConeOperator(m_, std::move(t), bc_);
}

ConeOperator build_operator(int m, ConeOperator::Table coeff, BoundaryCondition bc) {
  if (m < 1) throw Error(ErrorCode::BadShape, "operator order must be >= 1");
  if (static_cast<int>(coeff.size()) != m + 1)
    throw Error(ErrorCode::BadShape, "coefficient table must have m+1 rows (k = 0..m)");
  std::size_t width = 0;
  for (const auto& row : coeff) width = std::max(width, row.size());
  if (width == 0) throw Error(ErrorCode::BadShape, "empty coefficient table");
  for (const auto& row : coeff) {
    if (!row.empty() && row.size() != width)
      throw Error(ErrorCode::BadShape, "ragged coefficient table: all rows must have the same depth");
  }
  const std::size_t depth = std::max<std::size_t>(width - 1, static_cast<std::size_t>(m));
  for (auto& row : coeff) row.resize(depth + 1);

  const double scale = table_scale(coeff);
  if (coeff[m][0] == cplx{} || std::abs(coeff[m][0]) <= 1e-14 * scale)
    throw Error(ErrorCode::DegenerateLeadingCoefficient, "a_m(0) = 0: operator is not c-elliptic at the tip");

  if (bc.rows.size() == 0) {
    if (m % 2 != 0) throw Error(ErrorCode::BadShape, "odd order requires an explicit right boundary condition");
    bc = BoundaryCondition::dirichlet(m);
  }
  if (bc.rows.cols() != m) throw Error(ErrorCode::BadShape, "boundary condition rows must act on an m-jet");

  ConeOperator op(m, std::move(coeff), std::move(bc));
  const double lead_scale = [&] {
    double s = 0.0;
    for (const auto& c : op.table()[m]) s = std::max(s, std::abs(c));
    return s;
  }();
  for (int i = 0; i < kValidationGrid; ++i) {
    const double x = static_cast<double>(i) / (kValidationGrid - 1);
    if (std::abs(op.a(m, x)) <= 1e-12 * lead_scale)
      throw Error(ErrorCode::DegenerateLeadingCoefficient, "a_m vanishes at x = " + std::to_string(x));
  }
  return op;
}

FrozenOperator taylor_component(const ConeOperator& a, int nu) {
  if (nu < 0 || nu > a.depth()) throw Error(ErrorCode::OutOfRange, "Taylor index beyond table depth");
  FrozenOperator p;
  p.m = a.order();
  p.coeff0.resize(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) p.coeff0[k] = a.coeff(k, nu);
  return p;
}

Polynomial conormal_symbol(const FrozenOperator& p) { return Polynomial(p.coeff0); }

Polynomial conormal_symbol(const ConeOperator& a, int nu) { return conormal_symbol(taylor_component(a, nu)); }

ConeOperator model_operator(const ConeOperator& a) {
  ConeOperator::Table t = a.table();
  for (auto& row : t)
    for (std::size_t nu = 1; nu < row.size(); ++nu) row[nu] = cplx{};
  return build_operator(a.order(), std::move(t), a.right_bc());
}

bool has_x_independent_coefficients(const ConeOperator& a) {
  for (int k = 0; k <= a.order(); ++k)
    for (int nu = 1; nu <= a.depth(); ++nu)
      if (a.coeff(k, nu) != cplx{}) return false;
  return true;
}

bool check_parameter_ellipticity(const ConeOperator& a, const Sector& sector) {
  const int m = a.order();
  for (int i = 0; i < kValidationGrid; ++i) {
    const double x = static_cast<double>(i) / (kValidationGrid - 1);
    for (double xi : {1.0, -1.0}) {
      const cplx symbol = a.a(m, x) * std::pow(xi, m);
      if (symbol == cplx{}) return false;
      double diff = std::remainder(std::arg(symbol) - sector.theta0, 2.0 * kPi);
      if (std::abs(diff) <= sector.halfwidth) return false;
    }
  }
  return true;
}

LogPowerFunction apply_symbolic(const FrozenOperator& p, const LogPowerFunction& f) {
  LogPowerFunction out;
  LogPowerFunction power = f;
  for (std::size_t k = 0; k < p.coeff0.size(); ++k) {
    if (p.coeff0[k] != cplx{}) out += p.coeff0[k] * power;
    if (k + 1 < p.coeff0.size()) power = power.apply_xD();
  }
  return out;
}

LogPowerFunction apply_symbolic(const ConeOperator& a, const LogPowerFunction& f, int trunc) {
  if (trunc > a.depth()) throw Error(ErrorCode::TruncationExceeded, "truncation order exceeds coefficient depth");
  const int m = a.order();
  std::vector<LogPowerFunction> powers{f};
  for (int k = 1; k <= m; ++k) powers.push_back(powers.back().apply_xD());
  LogPowerFunction out;
  for (int nu = 0; nu <= trunc; ++nu) {
    LogPowerFunction pnu;
    for (int k = 0; k <= m; ++k)
      if (a.coeff(k, nu) != cplx{}) pnu += a.coeff(k, nu) * powers[k];
    out += pnu.times_power(nu - m);
  }
  return out;
}

bool is_formally_symmetric(const ConeOperator& a, double tol) {
  const int m = a.order();
  double scale = 0.0;
  for (const auto& row : a.table())
    for (const auto& c : row) scale = std::max(scale, std::abs(c));
  for (int nu = 0; nu <= a.depth(); ++nu) {
    std::vector<cplx> conj_coeffs(m + 1);
    for (int k = 0; k <= m; ++k) conj_coeffs[k] = std::conj(a.coeff(k, nu));
    const auto lhs = Polynomial(conj_coeffs).shifted(-kI * static_cast<double>(nu));
    for (int k = 0; k <= m; ++k)
      if (std::abs(lhs.coeff(k) - a.coeff(k, nu)) > tol * std::max(1.0, scale)) return false;
  }
  return true;
}

}  // namespace conetrace
