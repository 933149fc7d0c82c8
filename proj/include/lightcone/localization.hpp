#pragma once

#include <functional>

#include "lightcone/section.hpp"

namespace lightcone {

/// Which covariant derivative the position operator uses:
/// Flat X = i d/dp, Pryce (rotation covariant, noncommuting components),
/// HawtonBaylis (axially symmetric, commuting components).
enum class PositionKind { Pryce, HawtonBaylis, Flat };

/// Shift vector b = (pi x e_z)/(|p| - p3) relating the two operators:
/// Q^HB_i = Q^PR_i + b_i Lambda. Singular on the +z ray.
Vec3 hb_shift_vector(const Vec3& p, double angle_guard = 1e-8);

/// (Q_j f)^k = i d_j f^k + i Gamma_{jl}^k f^l. Requires an analytic
/// jacobian on f unless allow_fd is set; output carries a jacobian when f
/// has jacobian and hessian, so applications nest once. j in 1..3.
Section position_apply(PositionKind kind, int j, const Section& f,
                       bool allow_fd = false);

/// [Q_i, Q_j] f, computed by nesting position_apply.
Section position_commutator(PositionKind kind, int i, int j, const Section& f,
                            bool allow_fd = false);

/// [Q_i, Q_j] f minus the curvature prediction:
/// Pryce: -i eps_{ijk} (p_k/|p|^3) Lambda f; HawtonBaylis and Flat: 0.
Section commutator_residual(PositionKind kind, int i, int j, const Section& f,
                            bool allow_fd = false);

/// f(p) = -i R (J1(R rho)/rho) (-p2, p1, 0), rho = sqrt(p1^2 + p2^2).
/// Joint eigenstate: M3 f = 0, Q^HB_3 f = 0, (Q1^2 + Q2^2) f = R^2 f.
/// Carries analytic jacobian and hessian.
Section circle_state(double R);

/// A closed loop t in [0, 2pi] -> position space. velocity is optional;
/// when set the line integral uses the spectrally accurate trapezoid in t,
/// otherwise chords between consecutive nodes.
struct LoopSpec {
  std::function<Vec3(double)> r;
  std::function<Vec3(double)> velocity;
  int n_nodes = 4096;
  double closed_tol = 1e-12;
};

/// f_l(p) = (1/2pi) contour integral of e^{-i p.r(t)} dr(t); transverse by
/// closedness. Throws if the loop is not closed.
Section loop_state(const LoopSpec& spec);

/// Annular slab {R1 <= r <= R2, z1 <= z <= z2}; position-space density
/// (1/(2 pi r)) (-sin phi, cos phi, 0) inside, zero outside.
struct WasherState {
  double r1, r2, z1, z2;

  void validate() const;
  double squared_norm() const;  // (z2 - z1) ln(R2/R1) / (2 pi)
  CVec3 position_form(const Vec3& x) const;
};

}  // namespace lightcone
