#include "conetrace/domain.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace conetrace {

namespace {

CMatrix orthonormal_columns(const CMatrix& W) {
  if (W.cols() == 0) return W;
  Eigen::HouseholderQR<CMatrix> qr(W);
  return qr.householderQ() * CMatrix::Identity(W.rows(), W.cols());
}

CMatrix kernel_basis(const CMatrix& M, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(M.cols() - rank);
}

}  // namespace

DomainSpec make_domain(const ConeOperator& a, const CMatrix& W, std::string label) {
  DomainSpec d;
  d.basis_order = canonical_basis(a);
  if (W.rows() != d.ambient_dimension() && W.cols() > 0)
    throw Error(ErrorCode::BadShape, "domain columns must have length d = " + std::to_string(d.ambient_dimension()));
  if (W.cols() > d.ambient_dimension()) throw Error(ErrorCode::BadShape, "more domain columns than d");
  d.W = W.cols() == 0 ? CMatrix(d.ambient_dimension(), 0) : W;
  if (d.W.cols() > 0 && numerical_rank(d.W) != d.W.cols())
    throw Error(ErrorCode::BadShape, "domain columns are linearly dependent");
  d.label = std::move(label);
  return d;
}

DomainSpec minimal_domain(const ConeOperator& a) {
  const int d = max_domain_dimension(a);
  return make_domain(a, CMatrix(d, 0), "min");
}

DomainSpec maximal_domain(const ConeOperator& a) {
  const int d = max_domain_dimension(a);
  return make_domain(a, CMatrix::Identity(d, d), "max");
}

CMatrix KappaData::kappa(double rho) const {
  if (T.size() == 0) return T;
  const CMatrix scaled = std::log(rho) * T;
  return scaled.exp();
}

CMatrix kappa_matrix(const ConeOperator& a, double rho) {
  const auto basis = canonical_basis(a);
  const int d = static_cast<int>(basis.size());
  CMatrix K = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const auto image = basis[col].function().kappa(rho, a.order());
    for (int row = 0; row < d; ++row) K(row, col) = image.coeff(basis[row].sigma, basis[row].log_power);
  }
  return K;
}

KappaData generator(const ConeOperator& a) {
  const auto basis = canonical_basis(a);
  const int d = static_cast<int>(basis.size());
  KappaData kd;
  kd.m = a.order();
  kd.T = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    kd.T(col, col) = 0.5 * a.order() + kI * basis[col].sigma;
    // d/dρ (log x + log ρ)^k at ρ = 1 → k log^{k−1} x
    if (basis[col].log_power > 0) kd.T(col - 1, col) = static_cast<double>(basis[col].log_power);
  }
  return kd;
}

int numerical_rank(const CMatrix& M, double tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    const double rel = s(i) / s(0);
    if (rel > tol * 1e-2 && rel < tol * 1e2)
      throw Error(ErrorCode::RankIndeterminate, "singular value straddles the rank tolerance");
    if (rel > tol) ++rank;
  }
  return rank;
}

StationarityVerdict stationarity(const ConeOperator& a, const DomainSpec& w, double tol) {
  StationarityVerdict v;
  const int dpp = w.dimension();
  if (dpp == 0 || dpp == w.ambient_dimension()) {
    v.stationary = true;
    return v;
  }
  const auto kd = generator(a);
  const CMatrix Q = orthonormal_columns(w.W);
  CMatrix aug(Q.rows(), 2 * dpp);
  aug << Q, kd.T * Q;
  v.stationary = numerical_rank(aug, tol) == dpp;
  const CMatrix TQ = kd.T * Q;
  v.generator_residual = (TQ - Q * (Q.adjoint() * TQ)).norm() / std::max(kd.T.norm(), 1e-300);
  for (double rho : {2.0, std::exp(1.0), 10.0}) {
    CMatrix aug_k(Q.rows(), 2 * dpp);
    aug_k << Q, orthonormal_columns(kd.kappa(rho) * Q);
    const bool inv = numerical_rank(aug_k, tol) == dpp;
    if (inv != v.stationary) v.kappa_agrees = false;
  }
  return v;
}

bool is_stationary(const ConeOperator& a, const DomainSpec& w, double tol) { return stationarity(a, w, tol).stationary; }

CMatrix canonical_columns(const CMatrix& W, double tol) {
  if (W.cols() == 0) return W;
  // Reduced row echelon form of Wᵀ, scanning coordinates from the top.
  CMatrix R = W.transpose();
  const int rows = static_cast<int>(R.rows());
  const int cols = static_cast<int>(R.cols());
  int lead = 0;
  for (int c = 0; c < cols && lead < rows; ++c) {
    int piv = lead;
    for (int r = lead + 1; r < rows; ++r)
      if (std::abs(R(r, c)) > std::abs(R(piv, c))) piv = r;
    if (std::abs(R(piv, c)) <= tol * std::max(1.0, R.cwiseAbs().maxCoeff())) continue;
    R.row(piv).swap(R.row(lead));
    R.row(lead) /= R(lead, c);
    for (int r = 0; r < rows; ++r)
      if (r != lead) R.row(r) -= R(r, c) * R.row(lead);
    ++lead;
  }
  for (int i = 0; i < R.rows(); ++i)
    for (int j = 0; j < R.cols(); ++j) {
      if (std::abs(R(i, j).real()) <= tol) R(i, j).real(0.0);
      if (std::abs(R(i, j).imag()) <= tol) R(i, j).imag(0.0);
    }
  return R.transpose();
}

InvariantSubspaces invariant_subspaces(const CMatrix& T, int dim, double tol) {
  InvariantSubspaces out;
  const int d = static_cast<int>(T.rows());
  if (dim < 0 || dim > d) return out;
  if (dim == 0) {
    out.subspaces.push_back(CMatrix(d, 0));
    return out;
  }
  if (dim == d) {
    out.subspaces.push_back(CMatrix::Identity(d, d));
    return out;
  }
  Eigen::ComplexEigenSolver<CMatrix> es(T, false);
  std::vector<cplx> eig(es.eigenvalues().data(), es.eigenvalues().data() + d);
  const double scale = std::max(1.0, T.norm());

  struct Cluster {
    cplx value;
    int algebraic = 0;
    std::vector<CMatrix> chain;  // chain[k] = ker (T − λ)^k, k = 0..algebraic
  };
  std::vector<Cluster> clusters;
  for (const auto& z : eig) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(c.value - z) < 1e-6 * scale) {
        ++c.algebraic;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({z, 1, {}});
  }
  for (auto& c : clusters) {
    const CMatrix shifted = T - c.value * CMatrix::Identity(d, d);
    const CMatrix ker1 = kernel_basis(shifted, 1e-7);
    if (ker1.cols() > 1) {
      out.continuum = true;
      return out;
    }
    c.chain.push_back(CMatrix(d, 0));
    CMatrix power = CMatrix::Identity(d, d);
    for (int k = 1; k <= c.algebraic; ++k) {
      power = power * shifted;
      c.chain.push_back(kernel_basis(power, 1e-7));
    }
  }

  std::vector<int> pick(clusters.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
    if (idx == clusters.size()) {
      if (remaining != 0) return;
      CMatrix W(d, dim);
      int col = 0;
      for (std::size_t i = 0; i < clusters.size(); ++i) {
        const CMatrix& V = clusters[i].chain[pick[i]];
        W.middleCols(col, V.cols()) = V;
        col += static_cast<int>(V.cols());
      }
      out.subspaces.push_back(canonical_columns(W, tol));
      return;
    }
    for (int k = 0; k <= std::min(clusters[idx].algebraic, remaining); ++k) {
      pick[idx] = k;
      rec(idx + 1, remaining - k);
    }
  };
  rec(0, dim);
  return out;
}

StationaryDomains stationary_domains(const ConeOperator& a, int dim) {
  StationaryDomains out;
  const auto kd = generator(a);
  const auto inv = invariant_subspaces(kd.T, dim);
  out.continuum = inv.continuum;
  int idx = 0;
  for (const auto& W : inv.subspaces) out.domains.push_back(make_domain(a, W, "stationary-" + std::to_string(idx++)));
  return out;
}

DomainSpec friedrichs_domain(const ConeOperator& a) {
  if (!is_formally_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "operator is not formally symmetric");
  const int m = a.order();
  if (m % 2 != 0) throw Error(ErrorCode::NotSymmetric, "odd order operators are not semibounded");
  int sign = 0;
  for (int i = 0; i <= 100; ++i) {
    const cplx lead = a.a(m, i / 100.0);
    if (std::abs(lead.imag()) > 1e-12 * std::abs(lead))
      throw Error(ErrorCode::NotSymmetric, "leading coefficient is not real");
    const int s = lead.real() > 0 ? 1 : -1;
    if (sign != 0 && s != sign) throw Error(ErrorCode::NotSymmetric, "leading coefficient changes sign: not semibounded");
    sign = s;
  }

  const auto basis = canonical_basis(a);
  const int d = static_cast<int>(basis.size());
  std::vector<int> cols;
  for (const auto& r : strip_sigma(a).roots) {
    const double im = r.sigma.imag();
    if (std::abs(im) < kStripBoundaryTol && r.multiplicity > 2)
      throw Error(ErrorCode::SelectionAmbiguous, "root on Im sigma = 0 with multiplicity > 2");
  }
  for (int i = 0; i < d; ++i) {
    const double im = basis[i].sigma.imag();
    if (std::abs(im) < kStripBoundaryTol) {
      if (basis[i].log_power == 0) cols.push_back(i);
    } else if (im < 0) {
      cols.push_back(i);
    }
  }
  CMatrix W = CMatrix::Zero(d, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) W(cols[j], static_cast<int>(j)) = 1.0;
  auto dom = make_domain(a, W, "friedrichs");
  if (!is_stationary(a, dom)) throw Error(ErrorCode::VerificationFailed, "Friedrichs domain failed the stationarity check");
  return dom;
}

}  // namespace conetrace
