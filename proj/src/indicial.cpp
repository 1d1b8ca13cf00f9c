#include "conetrace/indicial.hpp"

#include <cmath>
#include <sstream>

namespace conetrace {

std::vector<IndicialRoot> boundary_spectrum(const ConeOperator& a) {
  const auto roots = polynomial_roots(conormal_symbol(a, 0));
  std::vector<IndicialRoot> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back({r.value, r.multiplicity});
  return out;
}

StripResult strip_sigma(const ConeOperator& a) {
  const double half = 0.5 * a.order();
  StripResult res;
  for (const auto& r : boundary_spectrum(a)) {
    const double im = r.sigma.imag();
    if (std::abs(std::abs(im) - half) < kStripBoundaryTol) {
      std::ostringstream os;
      os << "BoundaryProximity: root (" << r.sigma.real() << ", " << im << ") lies on Im sigma = "
         << (im > 0 ? "+" : "-") << half << "; excluded from the open strip";
      res.warnings.push_back(os.str());
      continue;
    }
    if (im > -half && im < half) res.roots.push_back(r);
  }
  return res;
}

SingularBasis wedge_singular_basis(const ConeOperator& a, const IndicialRoot& root) {
  if (classify_root(a, root.sigma) != StripPosition::Inside)
    throw Error(ErrorCode::OutOfRange, "root is not in the strip Sigma");
  const auto p0 = taylor_component(a, 0);
  SingularBasis sb{root.sigma, {}};
  for (int k = 0; k < root.multiplicity; ++k) {
    auto psi = LogPowerFunction::monomial(root.sigma, k);
    const auto residual = apply_symbolic(p0, psi);
    if (residual.max_abs_coeff() > 1e-9 * std::max(1.0, conormal_symbol(p0).scale()))
      throw Error(ErrorCode::VerificationFailed, "singular function not annihilated by the model operator");
    sb.basis.push_back(std::move(psi));
  }
  return sb;
}

int max_domain_dimension(const ConeOperator& a) {
  int d = 0;
  for (const auto& r : strip_sigma(a).roots) d += r.multiplicity;
  return d;
}

StripPosition classify_root(const ConeOperator& a, cplx sigma) {
  const double half = 0.5 * a.order();
  const double im = sigma.imag();
  if (std::abs(std::abs(im) - half) < kStripBoundaryTol) {
    std::ostringstream os;
    os << "root with Im sigma = " << im << " sits on the strip boundary; domain classification is undecidable";
    throw Error(ErrorCode::BoundaryProximity, os.str());
  }
  if (im <= -half) return StripPosition::Below;
  if (im >= half) return StripPosition::Above;
  return StripPosition::Inside;
}

int root_multiplicity_at(const std::vector<IndicialRoot>& spec, cplx sigma, double tol) {
  for (const auto& r : spec)
    if (std::abs(r.sigma - sigma) < tol * std::max(1.0, std::abs(sigma))) return r.multiplicity;
  return 0;
}

}  // namespace conetrace

namespace conetrace {

std::vector<BasisElement> canonical_basis(const ConeOperator& a) {
  std::vector<BasisElement> out;
  for (const auto& r : strip_sigma(a).roots)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back({r.sigma, k});
  return out;
}

}  // namespace conetrace
