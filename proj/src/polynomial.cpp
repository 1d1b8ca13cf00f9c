#include "conetrace/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace conetrace {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

int Polynomial::degree() const {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (c_[k] != cplx{}) return k;
  }
  return -1;
}

double Polynomial::scale() const {
  double s = 0.0;
  for (const auto& c : c_) s = std::max(s, std::abs(c));
  return s;
}

cplx Polynomial::operator()(cplx s) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({cplx{}});
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

std::vector<cplx> Polynomial::taylor_at(cplx center) const {
  // Repeated synthetic division.
  std::vector<cplx> work = c_;
  std::vector<cplx> out(c_.size());
  const int n = static_cast<int>(c_.size());
  for (int j = 0; j < n; ++j) {
    for (int k = n - 2; k >= j; --k) work[k] += center * work[k + 1];
    out[j] = work[j];
  }
  return out;
}

Polynomial Polynomial::shifted(cplx shift) const { return Polynomial(taylor_at(shift)); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial({cplx{}});
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<cplx> c = a.c_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

namespace {

cplx newton_polish(const Polynomial& p, cplx z) {
  const Polynomial dp = p.derivative();
  for (int it = 0; it < 50; ++it) {
    const cplx f = p(z);
    const cplx df = dp(z);
    if (df == cplx{}) break;
    const cplx step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// Relative size of p^{(j)}(z)/j! against the coefficient scale of p weighted by |z|.
double relative_taylor_residual(const Polynomial& p, cplx z, int j) {
  const auto t = p.taylor_at(z);
  double ref = 0.0;
  const double az = std::max(1.0, std::abs(z));
  for (int k = 0; k < static_cast<int>(p.coeffs().size()); ++k)
    ref = std::max(ref, std::abs(p.coeffs()[k]) * std::pow(az, k));
  return std::abs(t[j]) / ref;
}

}  // namespace

std::vector<PolynomialRoot> polynomial_roots(const Polynomial& p, double cluster_tol) {
  const int n = p.degree();
  if (n < 0) throw Error(ErrorCode::ZeroPolynomial, "polynomial_roots of zero polynomial");
  std::vector<PolynomialRoot> out;
  if (n == 0) return out;

  const auto& c = p.coeffs();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::RootFindingFailed, "companion eigenvalues did not converge");

  std::vector<cplx> raw(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& z : raw) z = newton_polish(p, z);

  // Candidate clusters: perturbed multiple roots split at O(eps^{1/k}).
  const double candidate_radius = 1e-4;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) < candidate_radius * std::max(1.0, std::abs(raw[i]))) {
        members.push_back(j);
        used[j] = true;
      }
    }
    cplx centroid{};
    for (auto k : members) centroid += raw[k];
    centroid /= static_cast<double>(members.size());

    int mult = static_cast<int>(members.size());
    // Shrink the multiplicity until all lower Taylor coefficients vanish.
    while (mult > 1) {
      bool ok = true;
      for (int j = 0; j < mult; ++j) {
        if (relative_taylor_residual(p, centroid, j) > cluster_tol) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      --mult;
    }
    if (mult == static_cast<int>(members.size())) {
      Polynomial q = p;
      for (int j = 1; j < mult; ++j) q = q.derivative();
      const cplx z = mult > 1 ? newton_polish(q, centroid) : raw[i];
      out.push_back({z, mult});
    } else {
      // Genuinely distinct close roots.
      for (auto k : members) out.push_back({raw[k], 1});
    }
  }

  for (const auto& r : out) {
    for (int j = 0; j < r.multiplicity; ++j) {
      if (relative_taylor_residual(p, r.value, j) > 1e-8) {
        throw Error(ErrorCode::RootFindingFailed, "root residual above tolerance after refinement");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PolynomialRoot& a, const PolynomialRoot& b) {
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.value.real() < b.value.real();
  });
  return out;
}

}  // namespace conetrace
