#include "lightcone/cocycle.hpp"

#include <cmath>
#include <stdexcept>

namespace lightcone {

ShellPoint ShellPoint::make(const Vec3& p, double m) {
  if (m < 0.0) throw std::domain_error("ShellPoint: mass must be nonnegative");
  if (m == 0.0 && p.squaredNorm() == 0.0) {
    throw std::domain_error("ShellPoint: p = 0 is excluded on the cone");
  }
  return {p, m, std::sqrt(p.squaredNorm() + m * m)};
}

double tangent_v0(const ShellPoint& point, const Vec3& v) {
  return v.dot(point.p) / point.p0;
}

FiberMetric metric_g(const ShellPoint& point) {
  FiberMetric out;
  const double denom = point.p.squaredNorm() + point.m * point.m;
  out.g = Mat3::Identity() - outer(point.p, point.p) / denom;
  if (point.m > 0.0) {
    out.has_inverse = true;
    out.g_inv = Mat3::Identity() + outer(point.p, point.p) / (point.m * point.m);
  }
  return out;
}

Mat3 sqrt_metric_h(const ShellPoint& point) {
  if (point.m <= 0.0) throw std::domain_error("sqrt_metric_h: requires m > 0");
  if (point.p.squaredNorm() == 0.0) return Mat3::Identity();
  const double lambda = point.m / point.p0 - 1.0;
  const Vec3 pi = point.pi();
  return Mat3::Identity() + lambda * outer(pi, pi);
}

Mat3 h_inverse(const ShellPoint& point) {
  if (point.m <= 0.0) throw std::domain_error("h_inverse: requires m > 0");
  if (point.p.squaredNorm() == 0.0) return Mat3::Identity();
  const double mu = point.p0 / point.m - 1.0;
  const Vec3 pi = point.pi();
  return Mat3::Identity() + mu * outer(pi, pi);
}

std::pair<Mat3, Mat3> projectors(const ShellPoint& point) {
  if (point.p.squaredNorm() == 0.0) {
    throw std::domain_error("projectors: undefined at p = 0");
  }
  const Vec3 pi = point.pi();
  const Mat3 p0 = outer(pi, pi);
  return {p0, Mat3::Identity() - p0};
}

CocycleMatrix dtilde(const LorentzMatrix& L, const ShellPoint& point) {
  CocycleMatrix out;
  out.source = point;
  out.target = ShellPoint::make(act_on_cone(L, point.p, point.m), point.m);
  out.d = L.block<3, 3>(1, 1) +
          L.block<3, 1>(1, 0) * point.p.transpose() / point.p0;
  return out;
}

CocycleMatrix dm(const LorentzMatrix& L, const ShellPoint& point) {
  if (point.m <= 0.0) throw std::domain_error("dm: requires m > 0 (use d0)");
  CocycleMatrix out = dtilde(L, point);
  out.d = sqrt_metric_h(out.target) * out.d * h_inverse(point);
  return out;
}

CocycleMatrix d0(const LorentzMatrix& L, const Vec3& p) {
  const ShellPoint src = ShellPoint::make(p, 0.0);
  const ShellPoint dst = ShellPoint::make(act_on_cone(L, p, 0.0), 0.0);
  const Vec3 pi = src.pi();
  const Vec3 pip = dst.pi();
  CocycleMatrix out;
  out.source = src;
  out.target = dst;
  out.d = L.block<3, 3>(1, 1) + L.block<3, 1>(1, 0) * pi.transpose() -
          pip * L.block<1, 3>(0, 1) + (1.0 - L(0, 0)) * outer(pip, pi);
  return out;
}

CocycleMatrix d0_prime(const BoostSpec& spec, const Vec3& p) {
  const LorentzMatrix L = boost_matrix(spec);
  const LorentzMatrix Linv = boost_matrix({spec.w, -spec.s});
  const Vec3 q = act_on_cone(Linv, p, 0.0);
  CocycleMatrix out = d0(L, q);
  return out;
}

CocycleMatrix d0_prime_limit(const Vec3& w, int sign, const Vec3& p,
                             double angle_guard) {
  if (std::abs(w.norm() - 1.0) > 1e-9) {
    throw std::domain_error("d0_prime_limit: w must be a unit vector");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("d0_prime_limit: sign must be +1 or -1");
  }
  const ShellPoint pt = ShellPoint::make(p, 0.0);
  const Vec3 pi = pt.pi();
  if (pi.cross(w).norm() < angle_guard) {
    throw std::domain_error("d0_prime_limit: p parallel to w (angular guard)");
  }
  const double sgn = static_cast<double>(sign);
  const double denom = 1.0 + sgn * pi.dot(w);
  const Mat3 numer = outer(w, w) - pi.dot(w) * outer(pi, w) + outer(pi, pi) +
                     sgn * outer(w, pi);
  CocycleMatrix out;
  out.source = pt;
  out.target = pt;
  out.d = Mat3::Identity() + sgn * outer(pi, w) - numer / denom;
  return out;
}

CocycleMatrix d_measure_scaled(const LorentzMatrix& L, const Vec3& p) {
  CocycleMatrix out = d0(L, p);
  out.d *= std::sqrt(out.source.p.norm() / out.target.p.norm());
  return out;
}

}  // namespace lightcone
