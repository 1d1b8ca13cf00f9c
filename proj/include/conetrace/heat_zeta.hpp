#pragma once

#include <string>
#include <vector>

#include "conetrace/asymptotics.hpp"

namespace conetrace {

/// μ_k^{1/m} ≈ c (k + δ) for k past the computed eigenvalues (1-based k).
struct WeylTail {
  int m = 2;
  double c = 0.0;
  double delta = 0.0;
  int first = 1;  // first index modelled by the tail

  double mu(double k) const { return std::pow(c * (k + delta), m); }
};

/// Least-squares fit of μ_k^{1/m} on the last `window` eigenvalues (sorted ascending).
WeylTail fit_weyl(const std::vector<double>& eigs, int m, int window, int skip_from_end = 0);

struct TailOptions {
  double tolerance = 1e-6;  // TailDominates above this absolute tail uncertainty
  int window = 10;
  int explicit_terms = 20000;
  double eig_rel_error = 1e-12;  // relative accuracy of the computed eigenvalues
};

/// Σ_k f(μ_k) over computed eigenvalues plus the Weyl-model tail; the error
/// estimate compares tails from two disjoint fit windows plus the
/// Euler–Maclaurin remainder.
struct SpectralSum {
  cplx value;
  cplx tail;
  double error_estimate = 0.0;
};

TraceSample eigen_trace(const std::vector<double>& eigs, int m, cplx lambda, int ell, const TailOptions& opt = {});

struct HeatSample {
  double t = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Tr e^{−tA_D} from eigenvalues plus tail, for each t.
std::vector<HeatSample> heat_trace(const std::vector<double>& eigs, int m, const std::vector<double>& t_grid,
                                   const TailOptions& opt = {});

/// Basis t^{(j−1)/m} (labelled (j,0)), t^{(j−1)/m} log^k t for j ≥ 2, k ≤ caps[j]
/// plus off-lattice probe powers (labelled j = −1).
std::vector<BasisTerm> heat_basis(int m, int J, const std::vector<int>& caps, const std::vector<double>& probes);
FitResult fit_heat(const std::vector<HeatSample>& samples, int m, int J, const std::vector<int>& caps = {},
                   const std::vector<double>& probes = {}, const FitOptions& opt = {});

struct PoleEntry {
  double s = 0.0;
  int order = 0;       // 0 when the candidate is cancelled by 1/Γ
  cplx residue;        // leading Laurent coefficient
  double uncertainty = 0.0;
  std::string status;  // "pole", "none", "cancelled", "unresolved", "probe"
  int j = 0;
  int k = 0;
};

struct ZetaValue {
  double s = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  std::string method;  // "direct", "continuation", "pole"
};

struct ZetaOptions {
  TailOptions tail;
  double residue_tol = 1e-3;
  double split = 1.0;   // continuation splits the Mellin integral at t = split
  double t_floor = 1e-3;  // below this the heat remainder h − H is treated as zero
};

struct ZetaReport {
  std::vector<PoleEntry> poles;
  std::vector<ZetaValue> values;
};

/// ζ(s) = Σ μ_k^{-s}: direct for s > 1/m, otherwise continued through the
/// fitted small-t expansion term by term.
double zeta_direct(const std::vector<double>& eigs, int m, double s, const TailOptions& opt, double* err = nullptr);
ZetaReport zeta_report(const std::vector<double>& eigs, int m, const FitResult& heat_fit,
                       const std::vector<double>& s_grid, const ZetaOptions& opt = {});

/// 1/Γ(s), exact zero at non-positive integers.
double rgamma(double s);

}  // namespace conetrace
