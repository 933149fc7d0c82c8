#include "lightcone/first_order.hpp"

#include <stdexcept>

namespace lightcone {

Section apply_first_order(const FirstOrderOp& op, const Section& f,
                          bool allow_fd, const std::string& label) {
  Section in = f;
  const bool needs_deriv = static_cast<bool>(op.c);
  if (needs_deriv && !in.has_jacobian()) {
    if (!allow_fd) {
      throw std::invalid_argument(
          label + ": section has no analytic jacobian (pass allow_fd)");
    }
    in = with_fd_derivatives(in);
  }
  Section out;
  out.label = label + "(" + f.label + ")";
  out.eval = [op, in](const Vec3& p) {
    CVec3 v = CVec3::Zero();
    const CVec3 fv = in.eval(p);
    if (op.a) v += op.a(p) * fv;
    if (op.c) v += in.jacobian(p) * op.c(p);
    if (op.A) v += op.A(p) * fv;
    return v;
  };
  const bool can_jac = in.has_jacobian() && (!needs_deriv || in.has_hessian());
  if (can_jac) {
    out.jacobian = [op, in](const Vec3& p) {
      const CVec3 fv = in.eval(p);
      const CMat3 J = in.jacobian(p);
      CMat3 out_j = CMat3::Zero();
      if (op.a) {
        const Complex av = op.a(p);
        const CVec3 ga = op.grad_a(p);
        out_j += av * J + fv * ga.transpose();
      }
      if (op.c) {
        const CVec3 cv = op.c(p);
        const CMat3 gc = op.grad_c(p);
        const auto H = in.hessian(p);
        out_j += J * gc;  // (i,l) += sum_k J(i,k) gc(k,l)
        for (int i = 0; i < 3; ++i)
          for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 3; ++k) out_j(i, l) += cv[k] * H[i](k, l);
      }
      if (op.A) {
        out_j += op.A(p) * J;
        const auto gA = op.grad_A(p);
        for (int l = 0; l < 3; ++l) out_j.col(l) += gA[l] * fv;
      }
      return out_j;
    };
  }
  return out;
}

}  // namespace lightcone
