#pragma once

#include <vector>

#include "conetrace/cone_operator.hpp"
#include "conetrace/indicial.hpp"
#include "conetrace/log_power.hpp"

namespace conetrace {

struct ThetaStep {
  int vartheta = 0;
  LogPowerFunction value;  // e_{σ₀,ϑ}(ψ), supported at exponent σ₀ − iϑ
  bool resonant = false;   // σ₀ − iϑ ∈ spec_b
  int log_depth = -1;      // highest log power present (-1 when the step vanishes)
};

struct ThetaTail {
  cplx sigma0;
  LogPowerFunction source;
  std::vector<ThetaStep> steps;
  LogPowerFunction total;  // ψ + Σ steps

  bool any_resonant() const;
};

/// Largest log power accepted in a step before ResonanceAmbiguity is raised.
inline constexpr int kMaxStepLogDepth = 24;

/// e_{σ₀,ϑ}(ψ) from the Mellin recursion: the log-power block at σ₀ − iϑ whose
/// Mellin singular part cancels P̂₀(σ)^{-1} Σ_{k=1}^{ϑ} P̂_k(σ) s[(ω e_{σ₀,ϑ−k}ψ)^∧(σ+ik)].
/// `prior[j]` holds e_{σ₀,j}(ψ) for j < ϑ (prior[0] = ψ).
ThetaStep e_step(const ConeOperator& a, cplx sigma0, int vartheta, const std::vector<LogPowerFunction>& prior);

/// Steps e_{σ₀,1..count}(ψ).
std::vector<ThetaStep> e_steps(const ConeOperator& a, const LogPowerFunction& psi, int count);

/// J_{σ₀,ℓ} = {k ≥ 1 : Im σ₀ − k ≥ −m/2 − ℓ}; returns its largest element (0 if empty).
int theta_index_bound(const ConeOperator& a, cplx sigma0, int ell);

/// θ_ℓ^{-1}ψ = ψ + Σ_{k ∈ J_{σ₀,ℓ}} e_{σ₀,k}ψ. ψ must lie in E_{∧,σ₀} (or be zero).
ThetaTail theta_inverse(const ConeOperator& a, const LogPowerFunction& psi, int ell);

/// Basis correspondence between D_max/D_min and E_{∧,max}: in the canonical
/// basis θ is the identity; θ^{-1} attaches the tails e_{σ₀,1..m}.
struct ThetaMap {
  std::vector<BasisElement> basis;
  std::vector<ThetaTail> tails;

  int dimension() const { return static_cast<int>(basis.size()); }
  CMatrix theta() const { return CMatrix::Identity(dimension(), dimension()); }
  /// θ^{-1} applied to coordinates in the canonical basis.
  LogPowerFunction inverse(const CVector& coords) const;
};

ThetaMap theta_matrix(const ConeOperator& a);

}  // namespace conetrace
