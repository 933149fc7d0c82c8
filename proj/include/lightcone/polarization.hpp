#pragma once

#include <vector>

#include "lightcone/section.hpp"

namespace lightcone {

/// Angular guard around singular rays of moving frames (radians).
inline constexpr double kAngleGuard = 1e-8;

/// A pointwise-orthonormal moving frame on the punctured momentum space.
struct FrameTriple {
  Section e1, e2, e3;
  std::vector<Vec3> singular_rays;  // unit directions where undefined
};

/// Hertz-type basis for a unit vector a:
///   e1 = p x a / |p x a|, e2 = p x (p x a) / |p x (p x a)|, e3 = pi.
/// Singular on the line through +-a.
FrameTriple hertz_basis(const Vec3& a, double angle_guard = kAngleGuard);

/// Speed-of-light limits of the boosted Hertz basis (closed forms):
///   e1^a+- and e2^a+-. Requires w not parallel to a.
std::pair<Section, Section> boosted_basis_limit(const Vec3& w, const Vec3& a,
                                                int sign,
                                                double angle_guard = kAngleGuard);

/// The standard frame (w = e_z, a = e_y, s -> -inf specialization):
///   e1 = ((1-pi3-pi1^2)/(1-pi3), -pi1 pi2/(1-pi3), pi1)
///   e2 = (pi1 pi2/(1-pi3), -1 + pi2^2/(1-pi3), -pi2)
///   e3 = pi
/// Singular only on the +z ray. Carries analytic jacobians.
FrameTriple standard_frame(double angle_guard = kAngleGuard);

/// Helicity eigenbasis e+- = (e2 +- i e1)/sqrt(2) of the standard frame.
std::pair<Section, Section> complex_frame(double angle_guard = kAngleGuard);

}  // namespace lightcone
