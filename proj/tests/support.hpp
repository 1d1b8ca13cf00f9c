#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "conetrace/asymptotics.hpp"
#include "conetrace/heat_zeta.hpp"

namespace ct = conetrace;
using ct::cplx;

// x^{-2}((xD)^2 + nu^2) with Dirichlet data at x = 1
inline ct::ConeOperator bessel(double nu) {
  return ct::build_operator(2, {{nu * nu, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
}

inline ct::ConeOperator perturbed(double c) { return ct::build_operator(2, {{0.25, c}, {0.0, 0.0}, {1.0, 0.0}}); }

// exponent σ of x^{p}
inline cplx power_sigma(double p) { return {0.0, -p}; }

// span of Σ c_i x^{p_i}
inline ct::DomainSpec powers_domain(const ct::ConeOperator& a, const std::vector<std::pair<double, double>>& terms,
                                    const std::string& label = "custom") {
  const auto basis = ct::canonical_basis(a);
  ct::CMatrix W = ct::CMatrix::Zero(static_cast<int>(basis.size()), 1);
  for (const auto& [p, c] : terms)
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].log_power == 0 && ct::same_exponent(basis[i].sigma, power_sigma(p))) W(i, 0) += c;
  return ct::make_domain(a, W, label);
}

inline double coth(double x) { return std::cosh(x) / std::sinh(x); }

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
