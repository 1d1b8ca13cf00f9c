#pragma once

#include <string>
#include <vector>

#include "conetrace/cone_operator.hpp"
#include "conetrace/indicial.hpp"

namespace conetrace {

/// D/D_min ≅ θ^{-1}(W): W's columns span the associated wedge domain
/// D_∧/D_{∧,min} inside E_{∧,max} (canonical basis order).
struct DomainSpec {
  std::vector<BasisElement> basis_order;
  CMatrix W;  // d × d″
  std::string label;

  int ambient_dimension() const { return static_cast<int>(basis_order.size()); }
  int dimension() const { return static_cast<int>(W.cols()); }
};

/// Validates shape and column independence.
DomainSpec make_domain(const ConeOperator& a, const CMatrix& W, std::string label);
DomainSpec minimal_domain(const ConeOperator& a);
DomainSpec maximal_domain(const ConeOperator& a);

struct KappaData {
  CMatrix T;
  int m = 0;

  /// exp((log ρ) T).
  CMatrix kappa(double rho) const;
};

/// κ_ρ on the canonical basis: κ_ρ(x^{iσ₀} log^k x) = ρ^{m/2+iσ₀} Σ_j C(k,j)(log ρ)^{k−j} x^{iσ₀} log^j x.
CMatrix kappa_matrix(const ConeOperator& a, double rho);
KappaData generator(const ConeOperator& a);

inline constexpr double kDefaultRankTol = 1e-8;

/// Numerical rank with singular values measured against the largest one;
/// throws RankIndeterminate when a singular value falls within two decades of tol.
int numerical_rank(const CMatrix& M, double tol = kDefaultRankTol);

struct StationarityVerdict {
  bool stationary = false;
  bool kappa_agrees = true;  // ρ ∈ {2, e, 10} κ-rank test gave the same answer
  double generator_residual = 0.0;  // ‖(I − P_W) T W‖ / ‖T‖ with W orthonormalized
};

StationarityVerdict stationarity(const ConeOperator& a, const DomainSpec& w, double tol = kDefaultRankTol);
bool is_stationary(const ConeOperator& a, const DomainSpec& w, double tol = kDefaultRankTol);

struct InvariantSubspaces {
  std::vector<CMatrix> subspaces;
  bool continuum = false;  // ContinuumOfInvariantSubspaces
};

/// All dim-dimensional T-invariant subspaces, or the continuum flag when an
/// eigenvalue has geometric multiplicity > 1.
InvariantSubspaces invariant_subspaces(const CMatrix& T, int dim, double tol = kDefaultRankTol);

struct StationaryDomains {
  std::vector<DomainSpec> domains;
  bool continuum = false;
};

StationaryDomains stationary_domains(const ConeOperator& a, int dim);

/// Friedrichs extension of a formally symmetric semibounded operator:
/// strip functions with positive real power, plus the log-free function at
/// roots on Im σ₀ = 0. Postcondition: stationary.
DomainSpec friedrichs_domain(const ConeOperator& a);

/// Column-echelon representative of span(W), with entries below tol zeroed.
CMatrix canonical_columns(const CMatrix& W, double tol = 1e-12);

}  // namespace conetrace
