#include "conetrace/integrator.hpp"

#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace conetrace {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<cplx>;

// s(n, j): x^n ∂^n = Σ_j s(n,j) (x∂)^j. S(n, j): (x∂)^n = Σ_j S(n,j) x^j ∂^j.
std::vector<std::vector<double>> stirling1(int n) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(n + 1, 0.0));
  s[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) s[i][j] = s[i - 1][j - 1] - (i - 1) * s[i - 1][j];
  return s;
}

std::vector<std::vector<double>> stirling2(int n) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(n + 1, 0.0));
  s[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) s[i][j] = s[i - 1][j - 1] + j * s[i - 1][j];
  return s;
}

struct Companion {
  const ConeOperator* a;
  int m;
  int cols;
  mutable std::vector<cplx> coef;

  void operator()(const State& y, State& dy, double t) const {
    const double x = std::exp(t);
    const cplx lead = a->a(m, x) * std::pow(-kI, m);
    cplx mi = 1.0;
    for (int k = 0; k < m; ++k) {
      coef[k] = a->a(k, x) * mi / lead;
      mi *= -kI;
    }
    for (int c = 0; c < cols; ++c) {
      const int o = c * m;
      cplx top = 0.0;
      for (int k = 0; k < m; ++k) {
        top -= coef[k] * y[o + k];
        if (k + 1 < m) dy[o + k] = y[o + k + 1];
      }
      dy[o + m - 1] = top;
    }
  }
};

State flatten(const CMatrix& M) {
  State s(M.size());
  for (Eigen::Index c = 0; c < M.cols(); ++c)
    for (Eigen::Index r = 0; r < M.rows(); ++r) s[c * M.rows() + r] = M(r, c);
  return s;
}

CMatrix unflatten(const State& s, int m, int cols) {
  CMatrix M(m, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < m; ++r) M(r, c) = s[c * m + r];
  return M;
}

}  // namespace

CMatrix euler_to_x_jet(const CMatrix& euler, double x) {
  const int m = static_cast<int>(euler.rows());
  const auto s = stirling1(m);
  CMatrix out = CMatrix::Zero(m, euler.cols());
  for (int n = 0; n < m; ++n) {
    for (int j = 0; j <= n; ++j) out.row(n) += s[n][j] * euler.row(j);
    out.row(n) /= std::pow(x, n);
  }
  return out;
}

CMatrix x_to_euler_jet(const CMatrix& xjet, double x) {
  const int m = static_cast<int>(xjet.rows());
  const auto s = stirling2(m);
  CMatrix out = CMatrix::Zero(m, xjet.cols());
  for (int n = 0; n < m; ++n)
    for (int j = 0; j <= n; ++j) out.row(n) += s[n][j] * std::pow(x, j) * xjet.row(j);
  return out;
}

std::vector<CMatrix> propagate_euler(const ConeOperator& shifted, const CMatrix& euler0, double x0,
                                     const std::vector<double>& xs, double rel_tol, int* steps) {
  const int m = shifted.order();
  const int cols = static_cast<int>(euler0.cols());
  std::vector<CMatrix> out;
  out.reserve(xs.size());
  if (xs.empty()) return out;
  if (cols == 0) {
    out.assign(xs.size(), CMatrix(m, 0));
    return out;
  }
  Companion sys{&shifted, m, cols, std::vector<cplx>(m)};
  State y = flatten(euler0);
  std::vector<double> times;
  times.reserve(xs.size() + 1);
  times.push_back(std::log(x0));
  for (double x : xs) times.push_back(std::log(x));
  const double dir = times.back() >= times.front() ? 1.0 : -1.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    if ((times[i] - times[i - 1]) * dir < 0) throw Error(ErrorCode::OutOfRange, "observation points must be monotone");

  auto stepper = odeint::make_controlled(rel_tol * 1e-3, rel_tol, odeint::runge_kutta_fehlberg78<State>());
  int n_steps = 0;
  try {
    std::size_t idx = 0;  // integrate_times also reports the starting point
    n_steps = static_cast<int>(odeint::integrate_times(
        stepper, sys, y, times.begin(), times.end(), dir * 1e-3,
        [&](const State& s, double) {
          if (idx++ == 0) return;
          out.push_back(unflatten(s, m, cols));
        },
        odeint::max_step_checker(200000)));
  } catch (const odeint::odeint_error& e) {
    throw Error(ErrorCode::StepSizeUnderflow, std::string("integrator gave up: ") + e.what());
  }
  if (steps) *steps = n_steps;
  return out;
}

PropagateResult propagate(const ConeOperator& a, cplx lambda, const CMatrix& xjet0, double x0, double x1,
                          double rel_tol) {
  if (!(x0 > 0 && x1 > 0 && x0 <= 1 && x1 <= 1)) throw Error(ErrorCode::OutOfRange, "propagation points must lie in (0, 1]");
  if (xjet0.rows() != a.order()) throw Error(ErrorCode::BadShape, "jet must have m rows");
  const auto shifted = a.shifted(lambda);
  const CMatrix e0 = x_to_euler_jet(xjet0, x0);
  PropagateResult r;
  if (x0 == x1) {
    r.jet = xjet0;
    return r;
  }
  const auto coarse = propagate_euler(shifted, e0, x0, {x1}, rel_tol, &r.steps);
  const auto fine = propagate_euler(shifted, e0, x0, {x1}, rel_tol / 32);
  r.jet = euler_to_x_jet(fine.back(), x1);
  const CMatrix cj = euler_to_x_jet(coarse.back(), x1);
  r.error_estimate = (cj - r.jet).norm() / std::max(1.0, r.jet.norm());
  r.jet = cj;
  return r;
}

}  // namespace conetrace
