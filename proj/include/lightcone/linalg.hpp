#pragma once

#include <Eigen/Dense>
#include <complex>

namespace lightcone {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Relative Frobenius distance ||A - B|| / max(1, ||B||).
template <typename DerivedA, typename DerivedB>
double rel_frobenius(const Eigen::MatrixBase<DerivedA>& a,
                     const Eigen::MatrixBase<DerivedB>& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

inline Mat3 outer(const Vec3& a, const Vec3& b) { return a * b.transpose(); }

/// Spin matrix block Sigma^k_l = -eps_{klm} pi^m; the helicity operator is
/// i*Sigma acting on fiber vectors.
inline Mat3 sigma_matrix(const Vec3& pi) {
  Mat3 s;
  s << 0, -pi.z(), pi.y(), pi.z(), 0, -pi.x(), -pi.y(), pi.x(), 0;
  return s;
}

}  // namespace lightcone
