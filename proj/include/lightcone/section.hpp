#pragma once

#include <array>
#include <functional>
#include <string>

#include "lightcone/linalg.hpp"

namespace lightcone {

/// Which measure the Hilbert-space scalar product uses:
/// Invariant = d^3p/|p| (Lorentz invariant), Plain = d^3p.
enum class MeasureKind { Invariant, Plain };

/// A vector-valued wave function on the punctured momentum space:
/// a closure p -> C^3 with optional analytic first and second derivatives.
///
/// jacobian(p)(i,j) = d f^i / d p^j
/// hessian(p)[i](j,k) = d^2 f^i / d p^j d p^k
struct Section {
  using Eval = std::function<CVec3(const Vec3&)>;
  using Jacobian = std::function<CMat3(const Vec3&)>;
  using Hessian = std::function<std::array<CMat3, 3>(const Vec3&)>;

  Eval eval;
  Jacobian jacobian;  // empty if not available
  Hessian hessian;    // empty if not available
  std::string label;

  bool has_jacobian() const { return static_cast<bool>(jacobian); }
  bool has_hessian() const { return static_cast<bool>(hessian); }
  CVec3 operator()(const Vec3& p) const { return eval(p); }
};

Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section operator*(Complex c, const Section& a);

/// Central finite difference with one Richardson step (O(step^4)).
CMat3 fd_jacobian(const Section::Eval& f, const Vec3& p, double rel_step = 1e-5);

/// The same for second derivatives, built by differencing fd_jacobian.
std::array<CMat3, 3> fd_hessian(const Section::Eval& f, const Vec3& p,
                                double rel_step = 1e-4);

/// Returns a copy whose missing jacobian/hessian are filled in by
/// Richardson finite differences of eval.
Section with_fd_derivatives(Section f, double rel_step = 1e-5);

}  // namespace lightcone
