#include "lightcone/representation.hpp"

#include <cmath>
#include <stdexcept>

#include "lightcone/first_order.hpp"
#include "lightcone/polarization.hpp"

namespace lightcone {

namespace {

constexpr Complex kI{0.0, 1.0};

double eps(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

// Spin matrix (s^i)_{ab} = -i eps_{iab}.
CMat3 spin_matrix(int i) {
  CMat3 s = CMat3::Zero();
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) s(a - 1, b - 1) = -kI * eps(i, a, b);
  return s;
}

// k^i = eps_{ijk} pi_j s^k.
CMat3 small_k_matrix(int i, const Vec3& pi) {
  CMat3 out = CMat3::Zero();
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      const double e = eps(i, j, k);
      if (e != 0.0) out += e * pi[j - 1] * spin_matrix(k);
    }
  return out;
}

FirstOrderOp momentum_op(int component) {
  FirstOrderOp op;
  if (component == 0) {
    op.a = [](const Vec3& p) { return Complex(p.norm(), 0.0); };
    op.grad_a = [](const Vec3& p) { return CVec3((p / p.norm()).cast<Complex>()); };
  } else {
    const int c = component - 1;
    op.a = [c](const Vec3& p) { return Complex(p[c], 0.0); };
    op.grad_a = [c](const Vec3&) {
      CVec3 g = CVec3::Zero();
      g[c] = 1.0;
      return g;
    };
  }
  return op;
}

FirstOrderOp angular_op(int i) {  // L^i = -i (p x d/dp)^i
  FirstOrderOp op;
  op.c = [i](const Vec3& p) {
    CVec3 c = CVec3::Zero();
    for (int k = 1; k <= 3; ++k)
      for (int j = 1; j <= 3; ++j) c[k - 1] += -kI * eps(i, j, k) * p[j - 1];
    return c;
  };
  op.grad_c = [i](const Vec3&) {
    CMat3 g = CMat3::Zero();
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= 3; ++l) g(k - 1, l - 1) = -kI * eps(i, l, k);
    return g;
  };
  return op;
}

FirstOrderOp boost_k_op(int i, MeasureKind measure) {  // K^i = i|p| d_i (+ i pi_i/2)
  FirstOrderOp op;
  op.c = [i](const Vec3& p) {
    CVec3 c = CVec3::Zero();
    c[i - 1] = kI * p.norm();
    return c;
  };
  op.grad_c = [i](const Vec3& p) {
    CMat3 g = CMat3::Zero();
    const Vec3 pi = p / p.norm();
    for (int l = 0; l < 3; ++l) g(i - 1, l) = kI * pi[l];
    return g;
  };
  if (measure == MeasureKind::Plain) {
    op.a = [i](const Vec3& p) { return kI * 0.5 * p[i - 1] / p.norm(); };
    op.grad_a = [i](const Vec3& p) {
      const double r = p.norm();
      const Vec3 pi = p / r;
      CVec3 g;
      for (int l = 0; l < 3; ++l) {
        g[l] = kI * 0.5 * ((i - 1 == l ? 1.0 : 0.0) - pi[i - 1] * pi[l]) / r;
      }
      return g;
    };
  }
  return op;
}

FirstOrderOp spin_op(int i) {
  FirstOrderOp op;
  op.A = [i](const Vec3&) { return spin_matrix(i); };
  op.grad_A = [](const Vec3&) {
    return std::array<CMat3, 3>{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};
  };
  return op;
}

FirstOrderOp small_k_op(int i) {
  FirstOrderOp op;
  op.A = [i](const Vec3& p) { return small_k_matrix(i, p / p.norm()); };
  op.grad_A = [i](const Vec3& p) {
    const double r = p.norm();
    const Vec3 pi = p / r;
    std::array<CMat3, 3> g;
    for (int l = 0; l < 3; ++l) {
      Vec3 dpi = -pi[l] * pi;
      dpi[l] += 1.0;
      g[l] = small_k_matrix(i, dpi / r);  // k^i is linear in pi
    }
    return g;
  };
  return op;
}

FirstOrderOp combine(const FirstOrderOp& x, const FirstOrderOp& y) {
  FirstOrderOp op;
  op.a = x.a ? x.a : y.a;  // at most one contributes in our generators
  op.grad_a = x.grad_a ? x.grad_a : y.grad_a;
  op.c = x.c ? x.c : y.c;
  op.grad_c = x.grad_c ? x.grad_c : y.grad_c;
  op.A = x.A ? x.A : y.A;
  op.grad_A = x.grad_A ? x.grad_A : y.grad_A;
  return op;
}

LorentzMatrix lorentz_inverse(const LorentzMatrix& L) {
  const Mat4 eta = minkowski_eta();
  return eta * L.transpose() * eta;
}

}  // namespace

Section apply_lorentz(const LorentzMatrix& L, const Section& f,
                      MeasureKind measure) {
  if (!validate_lorentz(L, 1e-8)) {
    throw std::domain_error("apply_lorentz: matrix is not orthochronous Lorentz");
  }
  const LorentzMatrix Linv = lorentz_inverse(L);
  Section out;
  out.label = "U(L)" + f.label;
  out.eval = [L, Linv, measure, e = f.eval](const Vec3& p) {
    const Vec3 q = act_on_cone(Linv, p, 0.0);
    const Mat3 D = (measure == MeasureKind::Invariant)
                       ? d0(L, q).d
                       : d_measure_scaled(L, q).d;
    return CVec3(D * e(q));
  };
  return out;
}

Section apply_translation(const FourVector& a, const Section& f) {
  Section out;
  out.label = "U(a)" + f.label;
  out.eval = [a, e = f.eval](const Vec3& p) {
    const Complex phase = std::exp(kI * (a.p.dot(p) - a.p0 * p.norm()));
    return CVec3(phase * e(p));
  };
  if (f.has_jacobian()) {
    out.jacobian = [a, e = f.eval, j = f.jacobian](const Vec3& p) {
      const Complex phase = std::exp(kI * (a.p.dot(p) - a.p0 * p.norm()));
      const CVec3 grad_arg =
          kI * (a.p.cast<Complex>() - Complex(a.p0) * (p / p.norm()).cast<Complex>());
      return CMat3(phase * (j(p) + e(p) * grad_arg.transpose()));
    };
  }
  return out;
}

Section parity(const Section& f) {
  Section out;
  out.label = "parity(" + f.label + ")";
  out.eval = [e = f.eval](const Vec3& p) { return e(-p); };
  if (f.has_jacobian()) {
    out.jacobian = [j = f.jacobian](const Vec3& p) { return CMat3(-j(-p)); };
  }
  return out;
}

Section time_reversal(const Section& f) {
  Section out;
  out.label = "time_reversal(" + f.label + ")";
  out.eval = [e = f.eval](const Vec3& p) { return CVec3(e(-p).conjugate()); };
  if (f.has_jacobian()) {
    out.jacobian = [j = f.jacobian](const Vec3& p) {
      return CMat3(-j(-p).conjugate());
    };
  }
  return out;
}

Section helicity_apply(const Section& f) {
  FirstOrderOp op;
  op.A = [](const Vec3& p) {
    return CMat3(kI * sigma_matrix(p / p.norm()).cast<Complex>());
  };
  op.grad_A = [](const Vec3& p) {
    const double r = p.norm();
    const Vec3 pi = p / r;
    std::array<CMat3, 3> g;
    for (int l = 0; l < 3; ++l) {
      Vec3 dpi = -pi[l] * pi;
      dpi[l] += 1.0;
      g[l] = kI * sigma_matrix(dpi / r).cast<Complex>();
    }
    return g;
  };
  return apply_first_order(op, f, false, "helicity");
}

Section generator_apply(GeneratorName name, int component, const Section& f,
                        MeasureKind measure, bool allow_fd) {
  const int i = component;
  auto need_i = [&] {
    if (i < 1 || i > 3) throw std::invalid_argument("generator_apply: component in 1..3");
  };
  switch (name) {
    case GeneratorName::P0:
      return apply_first_order(momentum_op(0), f, allow_fd, "P0");
    case GeneratorName::P:
      need_i();
      return apply_first_order(momentum_op(i), f, allow_fd, "P" + std::to_string(i));
    case GeneratorName::L:
      need_i();
      return apply_first_order(angular_op(i), f, allow_fd, "L" + std::to_string(i));
    case GeneratorName::K:
      need_i();
      return apply_first_order(boost_k_op(i, measure), f, allow_fd,
                               "K" + std::to_string(i));
    case GeneratorName::S:
      need_i();
      return apply_first_order(spin_op(i), f, allow_fd, "s" + std::to_string(i));
    case GeneratorName::SmallK:
      need_i();
      return apply_first_order(small_k_op(i), f, allow_fd, "k" + std::to_string(i));
    case GeneratorName::M:
      need_i();
      return apply_first_order(combine(angular_op(i), spin_op(i)), f, allow_fd,
                               "M" + std::to_string(i));
    case GeneratorName::N:
      need_i();
      return apply_first_order(combine(boost_k_op(i, measure), small_k_op(i)), f,
                               allow_fd, "N" + std::to_string(i));
  }
  throw std::invalid_argument("generator_apply: unknown generator");
}

namespace {

// -i d/dt U(flow(t)) f at t = 0, central difference with one Richardson step.
Section flow_derivative(const std::function<Section(double)>& flowed,
                        const Section& f, double step, const std::string& label) {
  Section out;
  out.label = label + "_fd(" + f.label + ")";
  out.eval = [flowed, step](const Vec3& p) {
    auto diff = [&](double t) {
      return CVec3((flowed(t).eval(p) - flowed(-t).eval(p)) / (2.0 * t));
    };
    const CVec3 d1 = diff(step);
    const CVec3 d2 = diff(step / 2.0);
    return CVec3(-kI * (4.0 * d2 - d1) / 3.0);
  };
  return out;
}

}  // namespace

Section generator_fd(GeneratorName name, int component, const Section& f,
                     double step, MeasureKind measure) {
  const int i = component;
  switch (name) {
    case GeneratorName::P0: {
      // P^0 = eta^{00} P_0: the raised index flips the flow direction.
      auto flow = [f](double t) {
        return apply_translation({-t, Vec3::Zero()}, f);
      };
      return flow_derivative(flow, f, step, "P0");
    }
    case GeneratorName::P: {
      auto flow = [f, i](double t) {
        Vec3 a = Vec3::Zero();
        a[i - 1] = t;
        return apply_translation({0.0, a}, f);
      };
      return flow_derivative(flow, f, step, "P" + std::to_string(i));
    }
    case GeneratorName::M: {
      // exp(t m^i) rotates by -t about axis i.
      auto flow = [f, i, measure](double t) {
        Vec3 axis = Vec3::Zero();
        axis[i - 1] = 1.0;
        return apply_lorentz(rotation_matrix(axis, -t), f, measure);
      };
      return flow_derivative(flow, f, step, "M" + std::to_string(i));
    }
    case GeneratorName::N: {
      // exp(t n^i) = L(e_i, -t).
      auto flow = [f, i, measure](double t) {
        Vec3 w = Vec3::Zero();
        w[i - 1] = 1.0;
        return apply_lorentz(boost_matrix({w, -t}), f, measure);
      };
      return flow_derivative(flow, f, step, "N" + std::to_string(i));
    }
    case GeneratorName::L:
      return generator_fd(GeneratorName::M, i, f, step, measure) -
             generator_apply(GeneratorName::S, i, f, measure);
    case GeneratorName::K:
      return generator_fd(GeneratorName::N, i, f, step, measure) -
             generator_apply(GeneratorName::SmallK, i, f, measure);
    case GeneratorName::S:
      return generator_apply(GeneratorName::S, i, f, measure);
    case GeneratorName::SmallK:
      return generator_apply(GeneratorName::SmallK, i, f, measure);
  }
  throw std::invalid_argument("generator_fd: unknown generator");
}

std::array<Section, 4> pauli_lubanski(const Section& f, MeasureKind measure,
                                      bool allow_fd) {
  std::array<Section, 3> Mf = {
      generator_apply(GeneratorName::M, 1, f, measure, allow_fd),
      generator_apply(GeneratorName::M, 2, f, measure, allow_fd),
      generator_apply(GeneratorName::M, 3, f, measure, allow_fd)};
  std::array<Section, 3> Nf = {
      generator_apply(GeneratorName::N, 1, f, measure, allow_fd),
      generator_apply(GeneratorName::N, 2, f, measure, allow_fd),
      generator_apply(GeneratorName::N, 3, f, measure, allow_fd)};

  std::array<Section, 4> out;
  // W^0 = P.M
  Section w0 = generator_apply(GeneratorName::P, 1, Mf[0], measure, allow_fd) +
               generator_apply(GeneratorName::P, 2, Mf[1], measure, allow_fd);
  w0 = w0 + generator_apply(GeneratorName::P, 3, Mf[2], measure, allow_fd);
  w0.label = "W0(" + f.label + ")";
  out[0] = w0;
  // W^i = P^0 M^i + eps_{ijk} P^j N^k; the + sign is the one for which the
  // orbital part cancels exactly (P^0 L + P x K = 0) and W^mu = Lambda P^mu.
  for (int i = 1; i <= 3; ++i) {
    Section wi = generator_apply(GeneratorName::P0, 0, Mf[i - 1], measure, allow_fd);
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        const double e = eps(i, j, k);
        if (e != 0.0) {
          wi = wi + Complex(e) * generator_apply(GeneratorName::P, j, Nf[k - 1],
                                                 measure, allow_fd);
        }
      }
    wi.label = "W" + std::to_string(i) + "(" + f.label + ")";
    out[i] = wi;
  }
  return out;
}

Section boost_eigenmode(int alpha, double lambda) {
  if (alpha < 1 || alpha > 3) {
    throw std::invalid_argument("boost_eigenmode: alpha in 1..3");
  }
  const FrameTriple frame = standard_frame();
  const Section base = (alpha == 1) ? frame.e1 : (alpha == 2) ? frame.e2 : frame.e3;
  auto xi = [](const Vec3& p) {
    const double r = p.norm();
    return 0.5 * std::log((r - p.z()) / (r + p.z()));
  };
  auto grad_xi = [](const Vec3& p) {
    const double r = p.norm();
    const Vec3 pi = p / r;
    Vec3 g;
    for (int j = 0; j < 3; ++j) {
      const double dj3 = (j == 2) ? 1.0 : 0.0;
      g[j] = 0.5 * ((pi[j] - dj3) / (r - p.z()) - (pi[j] + dj3) / (r + p.z()));
    }
    return g;
  };
  Section out;
  out.label = "eigenmode:" + std::to_string(alpha) + ":" + std::to_string(lambda);
  out.eval = [base, xi, lambda](const Vec3& p) {
    return CVec3(std::exp(kI * lambda * xi(p)) * base.eval(p));
  };
  out.jacobian = [base, xi, grad_xi, lambda](const Vec3& p) {
    const Complex phase = std::exp(kI * lambda * xi(p));
    const CVec3 gx = (kI * lambda) * grad_xi(p).cast<Complex>();
    return CMat3(phase * (base.jacobian(p) + base.eval(p) * gx.transpose()));
  };
  return out;
}

}  // namespace lightcone
