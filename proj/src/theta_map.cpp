#include "conetrace/theta_map.hpp"

#include <algorithm>
#include <cmath>

#include "conetrace/laurent.hpp"

namespace conetrace {

bool ThetaTail::any_resonant() const {
  return std::any_of(steps.begin(), steps.end(), [](const ThetaStep& s) { return s.resonant; });
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

// Mellin coefficient of 1_{[0,1]} x^{iτ} log^j x at (σ − τ)^{−(j+1)}.
cplx mellin_lead(int j) { return factorial(j) * (j % 2 == 0 ? 1.0 : -1.0) * std::pow(kI, j + 1); }

}  // namespace

ThetaStep e_step(const ConeOperator& a, cplx sigma0, int vartheta, const std::vector<LogPowerFunction>& prior) {
  ThetaStep step;
  step.vartheta = vartheta;
  if (vartheta == 0) {
    step.value = prior.at(0);
    step.log_depth = step.value.is_zero() ? -1 : static_cast<int>(step.value.terms()[0].coeffs.size()) - 1;
    return step;
  }
  if (static_cast<int>(prior.size()) < vartheta)
    throw Error(ErrorCode::OutOfRange, "e_step needs all lower steps");
  if (vartheta > a.depth()) throw Error(ErrorCode::TruncationExceeded, "step order exceeds coefficient depth");

  const cplx tau = sigma0 - kI * static_cast<double>(vartheta);
  const Polynomial p0 = conormal_symbol(a, 0);

  int max_log = 0;
  for (int j = 0; j < vartheta; ++j)
    for (const auto& t : prior[j].terms()) max_log = std::max(max_log, static_cast<int>(t.coeffs.size()));
  const auto inv_probe = laurent_inverse_of_polynomial(p0, tau, 0);
  const int pole = inv_probe.pole_order();
  step.resonant = pole > 0;
  const int hi = pole + max_log + a.order() + 2;

  LaurentExpansion sum = LaurentExpansion::zero(tau, hi);
  for (int k = 1; k <= vartheta; ++k) {
    const auto& prev = prior[vartheta - k];
    if (prev.is_zero()) continue;
    const cplx prev_exp = sigma0 - kI * static_cast<double>(vartheta - k);
    const auto c = prev.coeffs_at(prev_exp);
    if (c.empty()) continue;
    // Singular part of (ω e_{ϑ−k}ψ)^∧ at its own pole, then σ ↦ σ + ik moves it to τ.
    LaurentExpansion mel = LaurentExpansion::zero(prev_exp, hi);
    for (int j = 0; j < static_cast<int>(c.size()); ++j)
      mel = laurent_add(mel, laurent_scale(c[j], mellin_cutoff(prev_exp, j, hi)));
    const auto shifted = shift_argument(singular_part(mel), kI * static_cast<double>(k));
    // Coefficients multiply from the left, so the k-th symbol in the
    // σ+ik convention is P̂_k(σ + ik).
    const Polynomial pk = conormal_symbol(a, k).shifted(kI * static_cast<double>(k));
    if (pk.is_zero()) continue;
    sum = laurent_add(sum, laurent_mul(laurent_of_polynomial(pk, tau, hi + max_log + 1), shifted));
  }
  const auto inv = laurent_inverse_of_polynomial(p0, tau, hi);
  const auto sing = singular_part(laurent_mul(inv, sum));

  const int depth = -sing.lo();  // highest pole order → log power depth-1
  if (depth - 1 > kMaxStepLogDepth)
    throw Error(ErrorCode::ResonanceAmbiguity, "resonant cascade exceeds the supported log depth");
  std::vector<cplx> coeffs(std::max(depth, 0));
  for (int j = 0; j < depth; ++j) coeffs[j] = -sing[-(j + 1)] / mellin_lead(j);
  step.value = LogPowerFunction::block(tau, std::move(coeffs));
  step.log_depth = step.value.is_zero() ? -1 : static_cast<int>(step.value.terms()[0].coeffs.size()) - 1;
  return step;
}

std::vector<ThetaStep> e_steps(const ConeOperator& a, const LogPowerFunction& psi, int count) {
  std::vector<ThetaStep> steps;
  if (psi.is_zero()) return steps;
  if (psi.terms().size() != 1) throw Error(ErrorCode::VerificationFailed, "psi must be supported at one exponent");
  const cplx sigma0 = psi.terms()[0].exponent;
  std::vector<LogPowerFunction> prior{psi};
  for (int v = 1; v <= count; ++v) {
    auto s = e_step(a, sigma0, v, prior);
    prior.push_back(s.value);
    steps.push_back(std::move(s));
  }
  return steps;
}

int theta_index_bound(const ConeOperator& a, cplx sigma0, int ell) {
  const double bound = sigma0.imag() + 0.5 * a.order() + ell;
  return std::max(0, static_cast<int>(std::floor(bound + 1e-9)));
}

ThetaTail theta_inverse(const ConeOperator& a, const LogPowerFunction& psi, int ell) {
  ThetaTail tail;
  tail.source = psi;
  tail.total = psi;
  if (psi.is_zero()) return tail;
  if (psi.terms().size() != 1) throw Error(ErrorCode::VerificationFailed, "psi must be supported at one exponent");
  tail.sigma0 = psi.terms()[0].exponent;
  const auto residual = apply_symbolic(taylor_component(a, 0), psi);
  if (residual.max_abs_coeff() > 1e-9 * std::max(1.0, psi.max_abs_coeff()))
    throw Error(ErrorCode::VerificationFailed, "psi is not in the kernel of the model operator");

  const int count = theta_index_bound(a, tail.sigma0, ell);
  if (count > a.depth()) throw Error(ErrorCode::TruncationExceeded, "theta tail needs deeper Taylor coefficients");
  tail.steps = e_steps(a, psi, count);
  for (const auto& s : tail.steps) tail.total += s.value;
  return tail;
}

LogPowerFunction ThetaMap::inverse(const CVector& coords) const {
  LogPowerFunction out;
  for (int i = 0; i < dimension(); ++i)
    if (coords(i) != cplx{}) out += coords(i) * tails[i].total;
  return out;
}

ThetaMap theta_matrix(const ConeOperator& a) {
  ThetaMap map;
  map.basis = canonical_basis(a);
  for (const auto& b : map.basis) {
    ThetaTail tail;
    tail.sigma0 = b.sigma;
    tail.source = b.function();
    tail.steps = e_steps(a, tail.source, a.order());
    tail.total = tail.source;
    for (const auto& s : tail.steps) tail.total += s.value;
    map.tails.push_back(std::move(tail));
  }
  return map;
}

}  // namespace conetrace
