#pragma once

#include <string>
#include <vector>

#include "conetrace/cone_operator.hpp"
#include "conetrace/log_power.hpp"

namespace conetrace {

struct IndicialRoot {
  cplx sigma;
  int multiplicity = 1;
};

struct SingularBasis {
  cplx sigma;
  std::vector<LogPowerFunction> basis;
};

struct StripResult {
  std::vector<IndicialRoot> roots;
  std::vector<std::string> warnings;  // BoundaryProximity diagnostics
};

/// Distance from the strip boundary lines Im σ = ±m/2 below which a root is
/// considered borderline.
inline constexpr double kStripBoundaryTol = 1e-8;

/// All roots of the conormal symbol P̂₀ with multiplicities, sorted by Im σ then Re σ.
std::vector<IndicialRoot> boundary_spectrum(const ConeOperator& a);
/// Roots with −m/2 < Im σ < m/2; borderline roots are excluded and reported.
StripResult strip_sigma(const ConeOperator& a);
/// Scalar case: {x^{iσ₀} log^k x : k < multiplicity}, each checked against A_∧.
SingularBasis wedge_singular_basis(const ConeOperator& a, const IndicialRoot& root);
int max_domain_dimension(const ConeOperator& a);

/// Position of a root relative to the strip, used wherever the
/// classification must be decided (domains, Frobenius admissibility).
enum class StripPosition { Below, Inside, Above };
/// Throws BoundaryProximity for roots within kStripBoundaryTol of a boundary line.
StripPosition classify_root(const ConeOperator& a, cplx sigma);

/// Resonance lookup: the multiplicity of `sigma` as a root of P̂₀ (0 if not a root).
int root_multiplicity_at(const std::vector<IndicialRoot>& spec, cplx sigma, double tol = 1e-8);

}  // namespace conetrace

namespace conetrace {

/// One element x^{iσ₀} log^k x of the canonical basis of E_{∧,max}.
struct BasisElement {
  cplx sigma;
  int log_power = 0;

  LogPowerFunction function() const { return LogPowerFunction::monomial(sigma, log_power); }
};

/// Canonical basis of E_{∧,max}: strip roots by Im σ₀ ascending (largest
/// real power first), then Re σ₀, then log power.
std::vector<BasisElement> canonical_basis(const ConeOperator& a);

}  // namespace conetrace
