#include "lightcone/localization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lightcone/bessel.hpp"
#include "lightcone/first_order.hpp"

namespace lightcone {

namespace {

constexpr Complex kI{0.0, 1.0};

double eps(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

// Pryce Gamma_j as a matrix acting on fiber vectors:
// G_j(k, l) = (p_k delta_{jl} - p_l delta_{jk}) / |p|^2.
Mat3 pryce_matrix(int j, const Vec3& p) {
  const double r2 = p.squaredNorm();
  Mat3 g;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      g(k, l) = (p[k] * (j == l ? 1.0 : 0.0) - p[l] * (j == k ? 1.0 : 0.0)) / r2;
  return g;
}

Mat3 pryce_matrix_deriv(int j, int m, const Vec3& p) {
  const double r2 = p.squaredNorm();
  Mat3 g;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double num = p[k] * (j == l ? 1.0 : 0.0) - p[l] * (j == k ? 1.0 : 0.0);
      const double dnum = (k == m ? 1.0 : 0.0) * (j == l ? 1.0 : 0.0) -
                          (l == m ? 1.0 : 0.0) * (j == k ? 1.0 : 0.0);
      g(k, l) = dnum / r2 - 2.0 * p[m] * num / (r2 * r2);
    }
  return g;
}

Vec3 shift_gradient(int j, const Vec3& p) {  // d b_j / d p
  const double r = p.norm();
  const Vec3 pi = p / r;
  const double u = r - p.z();
  Vec3 g = Vec3::Zero();
  if (j == 2) return g;  // b_3 = 0
  const int src = (j == 0) ? 1 : 0;        // b_1 = pi_2/u, b_2 = -pi_1/u
  const double sgn = (j == 0) ? 1.0 : -1.0;
  for (int m = 0; m < 3; ++m) {
    const double dpi = ((src == m ? 1.0 : 0.0) - pi[src] * pi[m]) / r;
    const double du = pi[m] - (m == 2 ? 1.0 : 0.0);
    g[m] = sgn * (dpi / u - pi[src] * du / (u * u));
  }
  return g;
}

FirstOrderOp position_op(PositionKind kind, int j) {
  FirstOrderOp op;
  const int a = j - 1;
  op.c = [a](const Vec3&) {
    CVec3 c = CVec3::Zero();
    c[a] = kI;
    return c;
  };
  op.grad_c = [](const Vec3&) { return CMat3(CMat3::Zero()); };
  if (kind == PositionKind::Flat) return op;

  op.A = [kind, a](const Vec3& p) {
    CMat3 m = kI * pryce_matrix(a, p).cast<Complex>();
    if (kind == PositionKind::HawtonBaylis) {
      const Vec3 b = hb_shift_vector(p);
      m += b[a] * kI * sigma_matrix(p / p.norm()).cast<Complex>();
    }
    return m;
  };
  op.grad_A = [kind, a](const Vec3& p) {
    std::array<CMat3, 3> g;
    for (int m = 0; m < 3; ++m) g[m] = kI * pryce_matrix_deriv(a, m, p).cast<Complex>();
    if (kind == PositionKind::HawtonBaylis) {
      const double r = p.norm();
      const Vec3 pi = p / r;
      const Vec3 b = hb_shift_vector(p);
      const Vec3 db = shift_gradient(a, p);
      for (int m = 0; m < 3; ++m) {
        Vec3 dpi = -pi[m] * pi;
        dpi[m] += 1.0;
        g[m] += db[m] * kI * sigma_matrix(pi).cast<Complex>() +
                b[a] * kI * sigma_matrix(dpi / r).cast<Complex>();
      }
    }
    return g;
  };
  return op;
}

std::string kind_tag(PositionKind kind) {
  switch (kind) {
    case PositionKind::Pryce: return "Qpr";
    case PositionKind::HawtonBaylis: return "Qhb";
    case PositionKind::Flat: return "X";
  }
  return "?";
}

}  // namespace

Vec3 hb_shift_vector(const Vec3& p, double angle_guard) {
  const double r = p.norm();
  if (r == 0.0) throw std::domain_error("hb_shift_vector: p = 0 excluded");
  const Vec3 pi = p / r;
  if (pi.cross(Vec3(0, 0, 1)).norm() < angle_guard && pi.z() > 0.0) {
    throw std::domain_error("hb_shift_vector: +z ray excluded");
  }
  return Vec3(pi.y(), -pi.x(), 0.0) / (r - p.z());
}

Section position_apply(PositionKind kind, int j, const Section& f, bool allow_fd) {
  if (j < 1 || j > 3) throw std::invalid_argument("position_apply: axis in 1..3");
  return apply_first_order(position_op(kind, j), f, allow_fd,
                           kind_tag(kind) + std::to_string(j));
}

Section position_commutator(PositionKind kind, int i, int j, const Section& f,
                            bool allow_fd) {
  Section in = f;
  if (allow_fd && !in.has_jacobian()) in = with_fd_derivatives(in);
  return position_apply(kind, i, position_apply(kind, j, in, allow_fd), allow_fd) -
         position_apply(kind, j, position_apply(kind, i, in, allow_fd), allow_fd);
}

Section commutator_residual(PositionKind kind, int i, int j, const Section& f,
                            bool allow_fd) {
  const Section comm = position_commutator(kind, i, j, f, allow_fd);
  if (kind != PositionKind::Pryce) return comm;
  Section out;
  out.label = "commres(" + comm.label + ")";
  out.eval = [comm, i, j, e = f.eval](const Vec3& p) {
    const double r = p.norm();
    Complex coeff(0.0, 0.0);
    for (int k = 1; k <= 3; ++k) coeff += -kI * eps(i, j, k) * p[k - 1] / (r * r * r);
    const CVec3 lam = kI * sigma_matrix(p / r).cast<Complex>() * e(p);
    return CVec3(comm.eval(p) - coeff * lam);
  };
  return out;
}

namespace {

// h = J1(z)/z, u = h'/z, v = (h'' z - h')/z^3, series-protected near 0.
struct BesselRatios {
  double h, u, v;
};

BesselRatios bessel_ratios(double z) {
  BesselRatios out{0.0, 0.0, 0.0};
  if (z < 0.5) {
    // c_k = (-1)^k / (2^{2k+1} k! (k+1)!)
    double c = 0.5;
    double z2 = z * z;
    double zh = 1.0, zu = 0.0, zv = 0.0;  // z^{2k}, z^{2k-2}, z^{2k-4}
    for (int k = 0; k <= 8; ++k) {
      out.h += c * zh;
      if (k >= 1) out.u += c * 2.0 * k * zu;
      if (k >= 2) out.v += c * 2.0 * k * (2.0 * k - 2.0) * zv;
      if (k >= 1) zv = zu;
      zu = zh;
      zh *= z2;
      c *= -1.0 / (4.0 * (k + 1.0) * (k + 2.0));
    }
  } else {
    const double j0 = std::cyl_bessel_j(0, z);
    const double j1 = std::cyl_bessel_j(1, z);
    out.h = j1 / z;
    out.u = j0 / (z * z) - 2.0 * j1 / (z * z * z);
    out.v = -j1 / (z * z * z) - 4.0 * j0 / (z * z * z * z) +
            8.0 * j1 / (z * z * z * z * z);
  }
  return out;
}

}  // namespace

Section circle_state(double R) {
  if (R <= 0.0) throw std::domain_error("circle_state: R > 0 required");
  // f = -i g(rho) (-p2, p1, 0) with g = R J1(R rho)/rho = R^2 h(R rho).
  auto pieces = [R](const Vec3& p, double& g, Vec3& dg, Mat3& ddg) {
    const double rho = std::hypot(p.x(), p.y());
    const auto b = bessel_ratios(R * rho);
    g = R * R * b.h;
    const double s = R * R * R * R * b.u;
    const double q = R * R * R * R * R * R * b.v;
    dg = Vec3(s * p.x(), s * p.y(), 0.0);
    ddg = Mat3::Zero();
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n)
        ddg(m, n) = q * p[m] * p[n] + (m == n ? s : 0.0);
  };
  Section out;
  out.label = "circle:" + std::to_string(R);
  out.eval = [pieces](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    pieces(p, g, dg, ddg);
    return CVec3(kI * g * p.y(), -kI * g * p.x(), 0.0);
  };
  out.jacobian = [pieces](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    pieces(p, g, dg, ddg);
    CMat3 j = CMat3::Zero();
    for (int m = 0; m < 3; ++m) {
      j(0, m) = kI * (dg[m] * p.y() + (m == 1 ? g : 0.0));
      j(1, m) = -kI * (dg[m] * p.x() + (m == 0 ? g : 0.0));
    }
    return j;
  };
  out.hessian = [pieces](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    pieces(p, g, dg, ddg);
    std::array<CMat3, 3> h{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        h[0](m, n) = kI * (ddg(m, n) * p.y() + dg[m] * (n == 1 ? 1.0 : 0.0) +
                           dg[n] * (m == 1 ? 1.0 : 0.0));
        h[1](m, n) = -kI * (ddg(m, n) * p.x() + dg[m] * (n == 0 ? 1.0 : 0.0) +
                            dg[n] * (m == 0 ? 1.0 : 0.0));
      }
    return h;
  };
  return out;
}

Section loop_state(const LoopSpec& spec) {
  if (!spec.r) throw std::invalid_argument("loop_state: no curve");
  if (spec.n_nodes < 4) throw std::invalid_argument("loop_state: too few nodes");
  const double two_pi = 2.0 * std::acos(-1.0);
  if ((spec.r(two_pi) - spec.r(0.0)).norm() > spec.closed_tol) {
    throw std::domain_error("loop_state: loop is not closed");
  }
  const int n = spec.n_nodes;
  std::vector<Vec3> nodes(n + 1);
  for (int k = 0; k <= n; ++k) nodes[k] = spec.r(two_pi * k / n);
  Section out;
  out.label = "loop";
  if (spec.velocity) {
    std::vector<Vec3> vel(n);
    for (int k = 0; k < n; ++k) vel[k] = spec.velocity(two_pi * k / n);
    out.eval = [nodes, vel, n](const Vec3& p) {
      CVec3 acc = CVec3::Zero();
      for (int k = 0; k < n; ++k) {
        acc += std::exp(-kI * p.dot(nodes[k])) * vel[k].cast<Complex>();
      }
      return CVec3(acc / static_cast<double>(n));
    };
  } else {
    out.eval = [nodes, n, two_pi](const Vec3& p) {
      CVec3 acc = CVec3::Zero();
      for (int k = 0; k < n; ++k) {
        const Vec3 mid = 0.5 * (nodes[k] + nodes[k + 1]);
        const Vec3 chord = nodes[k + 1] - nodes[k];
        acc += std::exp(-kI * p.dot(mid)) * chord.cast<Complex>();
      }
      return CVec3(acc / two_pi);
    };
  }
  return out;
}

void WasherState::validate() const {
  if (!(0.0 < r1 && r1 < r2 && z1 < z2)) {
    throw std::domain_error("WasherState: need 0 < R1 < R2 and z1 < z2");
  }
}

double WasherState::squared_norm() const {
  return (z2 - z1) * std::log(r2 / r1) / (2.0 * std::acos(-1.0));
}

CVec3 WasherState::position_form(const Vec3& x) const {
  const double r = std::hypot(x.x(), x.y());
  if (r < r1 || r > r2 || x.z() < z1 || x.z() > z2) return CVec3::Zero();
  const double c = 1.0 / (2.0 * std::acos(-1.0) * r * r);
  return {Complex(-c * x.y(), 0.0), Complex(c * x.x(), 0.0), Complex(0.0, 0.0)};
}

}  // namespace lightcone
