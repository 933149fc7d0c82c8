#pragma once

#include "lightcone/lorentz.hpp"

namespace lightcone {

enum class MassRegime { Massive, Massless };

/// A point of the mass shell: momentum p, mass m >= 0, derived energy p0.
/// For m = 0 the origin p = 0 is excluded.
struct ShellPoint {
  Vec3 p;
  double m = 0.0;
  double p0 = 0.0;

  static ShellPoint make(const Vec3& p, double m);
  MassRegime regime() const { return m > 0.0 ? MassRegime::Massive : MassRegime::Massless; }
  Vec3 pi() const { return p / p.norm(); }
};

/// Fiber metric g_(m)ij = delta_ij - p_i p_j / (|p|^2 + m^2).
/// The inverse exists only for m > 0.
struct FiberMetric {
  Mat3 g;
  bool has_inverse = false;
  Mat3 g_inv;
};

/// 3x3 cocycle matrix carrying its source and target shell points.
struct CocycleMatrix {
  Mat3 d;
  ShellPoint source;
  ShellPoint target;
};

/// v^0 = v.p / p0, the suppressed time component of a tangent vector.
double tangent_v0(const ShellPoint& point, const Vec3& v);

FiberMetric metric_g(const ShellPoint& point);

/// Positive square root h = I + (m/p0 - 1) pi pi^T of g; requires m > 0.
Mat3 sqrt_metric_h(const ShellPoint& point);
/// h^{-1} = I + (p0/m - 1) pi pi^T; requires m > 0.
Mat3 h_inverse(const ShellPoint& point);

/// Longitudinal projector P0 = pi pi^T and transverse P1 = I - P0; p != 0.
std::pair<Mat3, Mat3> projectors(const ShellPoint& point);

/// Tangent-bundle cocycle Dtilde^i_j = L^i_j + L^i_0 p_j / p0.
CocycleMatrix dtilde(const LorentzMatrix& L, const ShellPoint& point);

/// Orthogonal massive cocycle D_m = h(Lp) Dtilde h^{-1}(p); requires m > 0.
CocycleMatrix dm(const LorentzMatrix& L, const ShellPoint& point);

/// Massless-limit cocycle
///   D0^i_j = L^i_j + L^i_0 pi_j - pi'^i L^0_j + pi'^i pi_j (1 - L^0_0),
/// pi' = Lp/|Lp|; orthogonal for every L and p != 0.
CocycleMatrix d0(const LorentzMatrix& L, const Vec3& p);

/// D0'(w,s,p) = D0(L(w,s), L(w,s)^{-1} p).
CocycleMatrix d0_prime(const BoostSpec& spec, const Vec3& p);

/// Limit s -> +inf (sign = +1) or s -> -inf (sign = -1) of d0_prime.
/// Requires p not parallel to w: |pi x w| must exceed the angular guard.
CocycleMatrix d0_prime_limit(const Vec3& w, int sign, const Vec3& p,
                             double angle_guard = 1e-8);

/// Measure-rescaled cocycle sqrt(|p|/|Lp|) D0(L,p), unitary for plain d^3p.
CocycleMatrix d_measure_scaled(const LorentzMatrix& L, const Vec3& p);

}  // namespace lightcone
