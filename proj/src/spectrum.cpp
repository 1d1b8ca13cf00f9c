#include "conetrace/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "conetrace/integrator.hpp"

namespace conetrace {

LogPowerFunction strip_part(const LogPowerFunction& f, int m) {
  LogPowerFunction out;
  for (const auto& t : f.terms())
    if (t.exponent.imag() > -0.5 * m + kStripBoundaryTol && t.exponent.imag() < 0.5 * m - kStripBoundaryTol)
      out.accumulate(t.exponent, t.coeffs);
  return out;
}

CMatrix TipFamily::euler_jet(double x) const {
  const int m = combo.rows();
  CMatrix out = CMatrix::Zero(m, combo.cols());
  for (int s = 0; s < static_cast<int>(solutions.size()); ++s) {
    if (combo.row(s).isZero(0.0)) continue;
    const CVector j = solutions[s].euler_jet(x, m);
    out += j * combo.row(s);
  }
  return out;
}

CharacteristicSystem::CharacteristicSystem(const ConeOperator& a, const DomainSpec& w, EngineOptions opt)
    : a_(a), w_(w), opt_(opt) {
  d_ = max_domain_dimension(a_);
  if (w_.ambient_dimension() != d_) throw Error(ErrorCode::BadShape, "domain does not match the operator's E_max dimension");
  const auto tm = theta_matrix(a_);
  for (const auto& t : tm.tails) strip_tails_.push_back(strip_part(t.total, a_.order()));
}

TipFamily CharacteristicSystem::tip_family(cplx lambda) const {
  const int m = a_.order();
  TipFamily tf;
  tf.solutions = frobenius_basis(a_, lambda, opt_.frobenius);
  tf.x_match = tf.solutions.front().radius;

  std::vector<int> below, inside;
  for (int s = 0; s < m; ++s) {
    switch (classify_root(a_, tf.solutions[s].sigma0)) {
      case StripPosition::Below: below.push_back(s); break;
      case StripPosition::Inside: inside.push_back(s); break;
      case StripPosition::Above: break;
    }
  }
  if (static_cast<int>(inside.size()) != d_)
    throw Error(ErrorCode::VerificationFailed, "strip Frobenius solutions do not match dim E_max");

  const auto& basis = w_.basis_order;
  tf.theta = CMatrix::Zero(d_, d_);
  for (int c = 0; c < d_; ++c) {
    auto f = strip_part(tf.solutions[inside[c]].as_function(), m);
    const double ref = std::max(1.0, f.max_abs_coeff());
    for (int i = d_ - 1; i >= 0; --i) {
      const cplx coord = f.coeff(basis[i].sigma, basis[i].log_power);
      tf.theta(i, c) = coord;
      if (coord != cplx{}) f -= coord * strip_tails_[i];
    }
    if (f.max_abs_coeff() > 1e-8 * ref)
      throw Error(ErrorCode::VerificationFailed, "strip part of a Frobenius solution is not in the range of the theta map");
  }

  const int dpp = w_.dimension();
  tf.combo = CMatrix::Zero(m, static_cast<int>(below.size()) + dpp);
  for (std::size_t j = 0; j < below.size(); ++j) tf.combo(below[j], static_cast<int>(j)) = 1.0;
  if (dpp > 0) {
    const CMatrix beta = tf.theta.partialPivLu().solve(w_.W);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < dpp; ++j) tf.combo(inside[i], static_cast<int>(below.size()) + j) = beta(i, j);
  }
  return tf;
}

DetResult CharacteristicSystem::det(cplx lambda) const {
  const auto tip = tip_family(lambda);
  const CMatrix& B = a_.right_bc().rows;
  if (B.rows() != tip.count())
    throw Error(ErrorCode::DomainCountMismatch, "boundary conditions at x = 1 (" + std::to_string(B.rows()) +
                                                    ") do not match admissible tip solutions (" +
                                                    std::to_string(tip.count()) + ")");
  DetResult r;
  if (tip.count() == 0) {
    r.value = 1.0;
    return r;
  }
  const auto shifted = a_.shifted(lambda);
  const auto e1 = propagate_euler(shifted, tip.euler_jet(tip.x_match), tip.x_match, {1.0}, opt_.ode_rel_tol);
  const CMatrix X = euler_to_x_jet(e1.front(), 1.0);
  const CMatrix M = B * X;
  double bnorm = 1.0;
  for (int i = 0; i < B.rows(); ++i) bnorm *= B.row(i).norm();
  r.value = M.determinant() / bnorm;
  for (int j = 0; j < X.cols(); ++j) r.scale *= X.col(j).norm();
  return r;
}

CMatrix CharacteristicSystem::right_kernel() const {
  const CMatrix& B = a_.right_bc().rows;
  const int m = a_.order();
  Eigen::JacobiSVD<CMatrix> svd(B, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(m - B.rows());
}

DetResult characteristic_det(const ConeOperator& a, cplx lambda, const DomainSpec& w, const EngineOptions& opt) {
  return CharacteristicSystem(a, w, opt).det(lambda);
}

namespace {

cplx polish(const CharacteristicSystem& sys, cplx z) {
  for (int it = 0; it < 60; ++it) {
    const double h = 1e-7 * (1.0 + std::abs(z));
    const cplx f0 = sys.det(z).value;
    if (f0 == cplx{}) return z;
    const cplx f1 = sys.det(z + h).value;
    if (f1 == f0) return z;
    const cplx step = f0 * h / (f1 - f0);
    z -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) break;
  }
  return z;
}

double edge_winding(const CharacteristicSystem& sys, cplx z0, cplx z1, cplx f0, cplx f1, int depth) {
  const double dphi = std::arg(f1 / f0);
  if (std::abs(dphi) < kPi / 4 || depth > 40) {
    if (depth > 40) throw Error(ErrorCode::ContourThroughZero, "argument principle failed to resolve the phase");
    return dphi;
  }
  const cplx zm = 0.5 * (z0 + z1);
  const auto dm = sys.det(zm);
  if (dm.relative() < 1e-10) throw Error(ErrorCode::ContourThroughZero, "contour passes through an eigenvalue");
  return edge_winding(sys, z0, zm, f0, dm.value, depth + 1) + edge_winding(sys, zm, z1, dm.value, f1, depth + 1);
}

}  // namespace

int count_eigenvalues(const CharacteristicSystem& sys, const Region& rect) {
  const cplx corners[4] = {{rect.re_lo, rect.im_lo}, {rect.re_hi, rect.im_lo}, {rect.re_hi, rect.im_hi}, {rect.re_lo, rect.im_hi}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx za = corners[e], zb = corners[(e + 1) % 4];
    const int pieces = 8;
    cplx zprev = za;
    auto dprev = sys.det(za);
    if (dprev.relative() < 1e-10) throw Error(ErrorCode::ContourThroughZero, "contour passes through an eigenvalue");
    for (int i = 1; i <= pieces; ++i) {
      const cplx z = za + (zb - za) * (static_cast<double>(i) / pieces);
      const auto dz = sys.det(z);
      if (dz.relative() < 1e-10) throw Error(ErrorCode::ContourThroughZero, "contour passes through an eigenvalue");
      total += edge_winding(sys, zprev, z, dprev.value, dz.value, 0);
      zprev = z;
      dprev = dz;
    }
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

std::vector<Eigenvalue> eigenvalues(const CharacteristicSystem& sys, const Region& region, int max_count,
                                    const EigenSearchOptions& opt) {
  std::vector<Eigenvalue> out;
  if (max_count <= 0) return out;
  const int m = sys.op().order();
  const double inv_m = 1.0 / m;

  if (region.is_interval()) {
    auto to_s = [&](double lam) { return std::copysign(std::pow(std::abs(lam), inv_m), lam); };
    auto to_lambda = [&](double s) { return std::copysign(std::pow(std::abs(s), m), s); };
    const double s_lo = to_s(region.re_lo), s_hi = to_s(region.re_hi);
    const int n = std::max(2, static_cast<int>(std::ceil((s_hi - s_lo) / opt.s_step)) + 1);
    std::vector<double> s(n);
    std::vector<DetResult> d(n);
    for (int i = 0; i < n; ++i) {
      s[i] = s_lo + (s_hi - s_lo) * i / (n - 1);
      d[i] = sys.det(to_lambda(s[i]));
    }
    // phase from the best-conditioned sample
    int ref = 0;
    for (int i = 0; i < n; ++i)
      if (d[i].relative() > d[ref].relative()) ref = i;
    const cplx rot = std::abs(d[ref].value) > 0 ? std::conj(d[ref].value) / std::abs(d[ref].value) : cplx(1.0);
    for (int i = 0; i < n; ++i)
      if (std::abs((rot * d[i].value).imag()) > 1e-6 * d[i].scale)
        throw Error(ErrorCode::VerificationFailed, "determinant is not real on the interval; search a rectangle instead");
    auto g = [&](double sv) { return (rot * sys.det(to_lambda(sv)).value).real(); };
    for (int i = 0; i + 1 < n && static_cast<int>(out.size()) < max_count; ++i) {
      const double ga = (rot * d[i].value).real(), gb = (rot * d[i + 1].value).real();
      double root;
      if (ga == 0.0) {
        root = s[i];
      } else if (gb == 0.0 || (ga < 0) == (gb < 0)) {
        continue;
      } else {
        boost::uintmax_t iters = 100;
        auto br = boost::math::tools::toms748_solve(g, s[i], s[i + 1], ga, gb,
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
        root = 0.5 * (br.first + br.second);
      }
      const double lam = to_lambda(root);
      if (lam < region.re_lo || lam > region.re_hi) continue;
      out.push_back({lam, sys.det(lam).relative()});
    }
    return out;
  }

  std::function<void(const Region&, int)> locate = [&](const Region& r, int count) {
    if (count <= 0 || static_cast<int>(out.size()) >= max_count) return;
    const double wre = r.re_hi - r.re_lo, wim = r.im_hi - r.im_lo;
    const cplx center(0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi));
    const double size = std::max(wre, wim);
    if (count == 1 && size < 1e-2 * (1.0 + std::abs(center))) {
      const cplx z = polish(sys, center);
      out.push_back({z, sys.det(z).relative()});
      return;
    }
    if (size < opt.min_box * (1.0 + std::abs(center))) {
      const cplx z = polish(sys, center);
      for (int k = 0; k < count && static_cast<int>(out.size()) < max_count; ++k) out.push_back({z, sys.det(z).relative()});
      return;
    }
    for (double frac : {0.5, 0.47, 0.53, 0.41}) {
      Region a = r, b = r;
      if (wre >= wim) {
        a.re_hi = b.re_lo = r.re_lo + frac * wre;
      } else {
        a.im_hi = b.im_lo = r.im_lo + frac * wim;
      }
      int ca;
      try {
        ca = count_eigenvalues(sys, a);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ContourThroughZero) continue;
        throw;
      }
      locate(a, ca);
      locate(b, count - ca);
      return;
    }
    throw Error(ErrorCode::ContourThroughZero, "could not split the search rectangle away from eigenvalues");
  };
  locate(region, count_eigenvalues(sys, region));
  std::sort(out.begin(), out.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
    return x.value.real() != y.value.real() ? x.value.real() < y.value.real() : x.value.imag() < y.value.imag();
  });
  return out;
}

}  // namespace conetrace
