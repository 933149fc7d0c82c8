#include "lightcone/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace lightcone {

Mat4 minkowski_eta() {
  Mat4 eta = Mat4::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

LorentzMatrix boost_matrix(const BoostSpec& spec) {
  if (std::abs(spec.w.norm() - 1.0) > 1e-9) {
    throw std::domain_error("boost_matrix: direction w must be a unit vector");
  }
  const double ch = std::cosh(spec.s);
  const double sh = std::sinh(spec.s);
  Mat4 L = Mat4::Identity();
  L(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    L(0, i + 1) = -spec.w[i] * sh;
    L(i + 1, 0) = -spec.w[i] * sh;
    for (int j = 0; j < 3; ++j) {
      L(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + spec.w[i] * spec.w[j] * (ch - 1.0);
    }
  }
  return L;
}

LorentzMatrix rotation_matrix(const Vec3& axis, double theta) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) {
    throw std::domain_error("rotation_matrix: axis must be a unit vector");
  }
  Mat4 L = Mat4::Identity();
  L.block<3, 3>(1, 1) = Eigen::AngleAxisd(theta, axis).toRotationMatrix();
  return L;
}

bool validate_lorentz(const LorentzMatrix& L, double tol) {
  const Mat4 eta = minkowski_eta();
  // eta^{-1} = eta for the Minkowski metric.
  const Mat4 res = eta * L.transpose() * eta * L;
  return rel_frobenius(res, Mat4::Identity()) <= tol && L(0, 0) > 0.0;
}

Vec3 act_on_cone(const LorentzMatrix& L, const Vec3& p, double m) {
  if (m < 0.0) throw std::domain_error("act_on_cone: mass must be nonnegative");
  if (m == 0.0 && p.squaredNorm() == 0.0) {
    throw std::domain_error("act_on_cone: the origin is removed from the cone");
  }
  const double p0 = std::sqrt(p.squaredNorm() + m * m);
  return L.block<3, 3>(1, 1) * p + L.block<3, 1>(1, 0) * p0;
}

Mat4 rotation_generator(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("rotation_generator: i in 1..3");
  // (m^i)_{ab} = eps_{iab} on the spatial block.
  Mat4 g = Mat4::Zero();
  const int a = i % 3 + 1;       // i+1 cyclic, 1-based spatial
  const int b = (i + 1) % 3 + 1; // i+2 cyclic
  g(a, b) = 1.0;
  g(b, a) = -1.0;
  return g;
}

Mat4 boost_generator(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("boost_generator: i in 1..3");
  Mat4 g = Mat4::Zero();
  g(0, i) = 1.0;
  g(i, 0) = 1.0;
  return g;
}

}  // namespace lightcone
