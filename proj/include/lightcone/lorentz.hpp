#pragma once

#include "lightcone/linalg.hpp"

namespace lightcone {

/// Energy-momentum four-vector (p0, p) with metric signature (-+++).
struct FourVector {
  double p0 = 0.0;
  Vec3 p = Vec3::Zero();

  static FourVector on_shell(const Vec3& p, double m) {
    return {std::sqrt(p.squaredNorm() + m * m), p};
  }
};

/// 4x4 matrix L^mu_nu of an orthochronous Lorentz transformation.
/// Row index mu, column index nu; index 0 is time.
using LorentzMatrix = Mat4;

/// One-parameter boost subgroup L(w,s) = exp(-s w.n), |w| = 1.
struct BoostSpec {
  Vec3 w;
  double s = 0.0;
};

Mat4 minkowski_eta();

/// Closed-form boost matrix: L^0_0 = cosh s, L^0_i = L^i_0 = -w_i sinh s,
/// L^i_j = delta^i_j + w^i w_j (cosh s - 1).
LorentzMatrix boost_matrix(const BoostSpec& spec);

/// Spatial rotation about a unit axis embedded as a Lorentz matrix.
LorentzMatrix rotation_matrix(const Vec3& axis, double theta);

/// True iff eta L^T eta L = I (relative Frobenius) and L^0_0 > 0.
bool validate_lorentz(const LorentzMatrix& L, double tol = kDefaultTol);

/// Action p -> Lp on the mass-m shell: (Lp)^i = L^i_j p^j + L^i_0 p^0.
/// Requires m > 0, or m = 0 with p != 0 (the cone has the origin removed).
Vec3 act_on_cone(const LorentzMatrix& L, const Vec3& p, double m);

/// Lie algebra basis: spatial rotation generator m^i and boost generator n^i
/// as 4x4 matrices, so that exp(t m^i), exp(t n^i) are the one-parameter
/// flows whose derivatives define M^i and N^i.
Mat4 rotation_generator(int i);
Mat4 boost_generator(int i);

}  // namespace lightcone
