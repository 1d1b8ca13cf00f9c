#pragma once

#include <string>
#include <vector>

#include "conetrace/green.hpp"

namespace conetrace {

struct RayFailure {
  double r = 0.0;
  std::string code;
  std::string message;
};

/// Traces along λ = r e^{iθ₀} on a geometric r-grid.
struct RaySamples {
  double theta0 = kPi;
  int ell = 1;
  Polynomial phi = Polynomial::constant(1.0);
  std::string domain_label;
  std::vector<double> r;            // strictly increasing, one per sample
  std::vector<TraceSample> samples;
  std::vector<RayFailure> failures;  // per-λ failures (not fatal)
};

std::vector<double> geometric_grid(double r_min, double r_max, int count);

/// threads ≤ 1 runs sequentially.
RaySamples sample_ray(const CharacteristicSystem& sys, int ell, const Polynomial& phi, double theta0, double r_min,
                      double r_max, int count, const TraceOptions& opt = {}, int threads = 1);

/// One model function c·r^{exponent} log^k r, labelled by (j, k).
struct BasisTerm {
  int j = 0;
  int k = 0;
  double exponent = 0.0;
};

struct FitTerm {
  int j = 0;
  int k = 0;
  double exponent = 0.0;
  cplx alpha;
  double sigma = 0.0;  // 1-σ estimate from the residual and the normal matrix
};

struct FitResult {
  std::vector<FitTerm> terms;  // sorted by (j, k)
  std::vector<int> m_caps;
  double residual_norm = 0.0;  // RMS relative residual
  double condition = 0.0;
  std::vector<double> window_drift;  // per term: spread of α over sliding windows
  bool peeled = false;

  const FitTerm* find(int j, int k) const;
  cplx alpha(int j, int k) const;
  /// Model value at r.
  cplx operator()(double r) const;
};

struct FitOptions {
  double r_min = 0.0;  // samples below are ignored (pre-asymptotic region)
  double r_max = 1e300;
  double condition_limit = 1e12;
  bool peel = false;
  bool drift = true;
};

/// Basis r^{(1−j)/m − ℓ + shift} log^k r for j = 0..J, k = 0..caps[j].
std::vector<BasisTerm> expansion_basis(int m, int ell, int J, const std::vector<int>& caps, double shift = 0.0);

/// Weighted (relative) complex least squares in an arbitrary basis.
FitResult fit_basis(const std::vector<double>& r, const std::vector<cplx>& v, const std::vector<BasisTerm>& basis,
                    const FitOptions& opt = {});

FitResult fit_expansion(const RaySamples& s, int m, int J, const std::vector<int>& caps, const FitOptions& opt = {});

/// Spread of each coefficient over windows of half the samples sliding by a quarter.
std::vector<double> window_drift(const std::vector<double>& r, const std::vector<cplx>& v,
                                 const std::vector<BasisTerm>& basis);

struct LogDetection {
  int m_j = 0;
  std::vector<double> ratios;  // residual(k−1)/residual(k) for k = 1, 2, ...
};

/// Smallest log cap at order j beyond which adding a log power no longer
/// reduces the residual by `threshold`. Base model: orders ≤ J with caps.
/// Throws Inconclusive when a ratio lies between √threshold and threshold.
LogDetection detect_logs(const std::vector<double>& r, const std::vector<cplx>& v, int m, int ell, int J,
                         std::vector<int> caps, int j, double threshold = 10.0, int k_max = 2,
                         const FitOptions& opt = {});

struct CoefficientComparison {
  int j = 0;
  int k = 0;
  cplx a, b;
  double delta = 0.0;
  bool must_agree = false;
};

struct DomainComparison {
  std::vector<CoefficientComparison> rows;
  /// max delta over coefficients that must agree
  double max_required_delta = 0.0;
};

/// Coefficients with j < n and α_{n,1} must agree across domains; others may differ.
DomainComparison compare_domains(const FitResult& a, const FitResult& b, int n = 1);

std::vector<cplx> sample_values(const RaySamples& s);

}  // namespace conetrace
