#pragma once

#include "lightcone/section.hpp"

namespace lightcone {

/// An operator (Gf)(p) = a(p) f + sum_k c_k(p) d_k f + A(p) f, together
/// with the gradients needed to push an analytic jacobian through one
/// application. Unset members contribute nothing.
struct FirstOrderOp {
  std::function<Complex(const Vec3&)> a;
  std::function<CVec3(const Vec3&)> grad_a;
  std::function<CVec3(const Vec3&)> c;       // c(p)[k]
  std::function<CMat3(const Vec3&)> grad_c;  // (k,l) = d c_k / d p_l
  std::function<CMat3(const Vec3&)> A;
  std::function<std::array<CMat3, 3>(const Vec3&)> grad_A;  // [l] = d A / d p_l
};

/// Applies op to f. Needs an analytic jacobian on f when op has a
/// derivative part; allow_fd substitutes Richardson differences. The
/// result carries an analytic jacobian when f has jacobian and hessian,
/// so applications can be nested once.
Section apply_first_order(const FirstOrderOp& op, const Section& f,
                          bool allow_fd, const std::string& label);

}  // namespace lightcone
