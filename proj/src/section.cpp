#include "lightcone/section.hpp"

namespace lightcone {

Section operator+(const Section& a, const Section& b) {
  Section out;
  out.label = a.label + "+" + b.label;
  out.eval = [ea = a.eval, eb = b.eval](const Vec3& p) { return CVec3(ea(p) + eb(p)); };
  if (a.has_jacobian() && b.has_jacobian()) {
    out.jacobian = [ja = a.jacobian, jb = b.jacobian](const Vec3& p) {
      return CMat3(ja(p) + jb(p));
    };
  }
  if (a.has_hessian() && b.has_hessian()) {
    out.hessian = [ha = a.hessian, hb = b.hessian](const Vec3& p) {
      auto x = ha(p);
      const auto y = hb(p);
      for (int i = 0; i < 3; ++i) x[i] += y[i];
      return x;
    };
  }
  return out;
}

Section operator-(const Section& a, const Section& b) {
  return a + (Complex(-1.0, 0.0) * b);
}

Section operator*(Complex c, const Section& a) {
  Section out;
  out.label = a.label;
  out.eval = [c, e = a.eval](const Vec3& p) { return CVec3(c * e(p)); };
  if (a.has_jacobian()) {
    out.jacobian = [c, j = a.jacobian](const Vec3& p) { return CMat3(c * j(p)); };
  }
  if (a.has_hessian()) {
    out.hessian = [c, h = a.hessian](const Vec3& p) {
      auto x = h(p);
      for (int i = 0; i < 3; ++i) x[i] *= c;
      return x;
    };
  }
  return out;
}

CMat3 fd_jacobian(const Section::Eval& f, const Vec3& p, double rel_step) {
  const double h = rel_step * (1.0 + p.norm());
  CMat3 jac;
  for (int j = 0; j < 3; ++j) {
    Vec3 e = Vec3::Zero();
    e[j] = 1.0;
    auto central = [&](double step) {
      return CVec3((f(p + step * e) - f(p - step * e)) / (2.0 * step));
    };
    const CVec3 d1 = central(h);
    const CVec3 d2 = central(h / 2.0);
    jac.col(j) = (4.0 * d2 - d1) / 3.0;  // Richardson, O(h^4)
  }
  return jac;
}

std::array<CMat3, 3> fd_hessian(const Section::Eval& f, const Vec3& p,
                                double rel_step) {
  const double h = rel_step * (1.0 + p.norm());
  std::array<CMat3, 3> out;
  CMat3 jp[3], jm[3];
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = 1.0;
    jp[k] = fd_jacobian(f, p + h * e, rel_step);
    jm[k] = fd_jacobian(f, p - h * e, rel_step);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        out[i](j, k) = (jp[k](i, j) - jm[k](i, j)) / (2.0 * h);
      }
    }
    out[i] = 0.5 * (out[i] + out[i].transpose()).eval();
  }
  return out;
}

Section with_fd_derivatives(Section f, double rel_step) {
  if (!f.has_jacobian()) {
    f.jacobian = [e = f.eval, rel_step](const Vec3& p) {
      return fd_jacobian(e, p, rel_step);
    };
  }
  if (!f.has_hessian()) {
    f.hessian = [e = f.eval, rel_step](const Vec3& p) {
      return fd_hessian(e, p, 10.0 * rel_step);
    };
  }
  return f;
}

}  // namespace lightcone
