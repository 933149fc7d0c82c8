#include "lightcone/connections.hpp"

#include <cmath>
#include <stdexcept>

namespace lightcone {

namespace {

Mat3 diag110() {
  Mat3 e = Mat3::Identity();
  e(2, 2) = 0.0;
  return e;
}

// Jacobian B(a, j) = d (x, y, omega)_a / d p_j of the stereographic chart.
Mat3 stereo_jacobian(const Vec3& p) {
  const double r = p.norm();
  const Vec3 pi = p / r;
  const double u = r - p.z();
  Mat3 b;
  for (int j = 0; j < 3; ++j) {
    const double du = pi[j] - (j == 2 ? 1.0 : 0.0);
    b(0, j) = ((j == 0 ? 1.0 : 0.0) - p.x() * du / u) / u;
    b(1, j) = ((j == 1 ? 1.0 : 0.0) - p.y() * du / u) / u;
    b(2, j) = pi[j];
  }
  return b;
}

std::array<Mat3, 3> fd_gamma_derivs_axis(
    const std::function<std::array<Mat3, 3>(const Vec3&)>& gamma, const Vec3& s,
    int l, double rel_step = 1e-5) {
  const double h = rel_step * (1.0 + s.norm());
  Vec3 e = Vec3::Zero();
  e[l] = 1.0;
  auto central = [&](double step) {
    const auto gp = gamma(s + step * e);
    const auto gm = gamma(s - step * e);
    std::array<Mat3, 3> d;
    for (int i = 0; i < 3; ++i) d[i] = (gp[i] - gm[i]) / (2.0 * step);
    return d;
  };
  const auto d1 = central(h);
  const auto d2 = central(h / 2.0);
  std::array<Mat3, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = (4.0 * d2[i] - d1[i]) / 3.0;
  return out;
}

}  // namespace

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, r[i][j].cwiseAbs().maxCoeff());
  return m;
}

StereoPoint to_stereo(const Vec3& p, double angle_guard) {
  const double r = p.norm();
  if (r == 0.0) throw std::domain_error("to_stereo: p = 0 excluded");
  const Vec3 pi = p / r;
  if (pi.cross(Vec3(0, 0, 1)).norm() < angle_guard && pi.z() > 0.0) {
    throw std::domain_error("to_stereo: +z ray is outside the chart");
  }
  return {pi.x() / (1.0 - pi.z()), pi.y() / (1.0 - pi.z()), r};
}

Vec3 from_stereo(const StereoPoint& s) {
  if (s.omega <= 0.0) throw std::domain_error("from_stereo: omega must be > 0");
  const double a = s.a();
  return {2.0 * s.x * s.omega / a, 2.0 * s.y * s.omega / a,
          (s.x * s.x + s.y * s.y - 1.0) * s.omega / a};
}

std::array<Vec3, 3> pushforward_frame(const StereoPoint& s) {
  const double c = s.a() / (2.0 * s.omega);
  return {Vec3(c, 0, 0), Vec3(0, -c, 0), Vec3(0, 0, 1)};
}

ChartMetric chart_metric(const StereoPoint& s) {
  const double a = s.a();
  const double q = 4.0 * s.omega * s.omega / (a * a);
  ChartMetric out;
  out.g = Vec3(q, q, 1.0).asDiagonal();
  out.g_inv = Vec3(1.0 / q, 1.0 / q, 1.0).asDiagonal();
  out.vol_density = 4.0 * s.omega / (a * a);
  return out;
}

ConnectionCoeffs teleparallel_gamma() {
  ConnectionCoeffs c;
  c.chart = Chart::Stereographic;
  c.gamma = [](const Vec3& s) {
    const double a = 1.0 + s.x() * s.x() + s.y() * s.y();
    const Mat3 e = diag110();
    return std::array<Mat3, 3>{(-2.0 * s.x() / a) * e, (-2.0 * s.y() / a) * e,
                               (1.0 / s.z()) * e};
  };
  c.analytic_derivs = [](const Vec3& s) {
    const double x = s.x(), y = s.y(), w = s.z();
    const double a = 1.0 + x * x + y * y;
    const Mat3 e = diag110();
    std::array<std::array<Mat3, 3>, 3> d;  // d[l][i] = dGamma_i / dX^l
    for (auto& row : d) row = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    d[0][0] = ((-2.0 * a + 4.0 * x * x) / (a * a)) * e;
    d[1][0] = (4.0 * x * y / (a * a)) * e;
    d[0][1] = (4.0 * x * y / (a * a)) * e;
    d[1][1] = ((-2.0 * a + 4.0 * y * y) / (a * a)) * e;
    d[2][2] = (-1.0 / (w * w)) * e;
    return d;
  };
  return c;
}

ConnectionCoeffs pryce_gamma() {
  ConnectionCoeffs c;
  c.chart = Chart::Cartesian;
  c.gamma = [](const Vec3& p) {
    const double r2 = p.squaredNorm();
    if (r2 == 0.0) throw std::domain_error("pryce_gamma: p = 0 excluded");
    std::array<Mat3, 3> g;
    for (int i = 0; i < 3; ++i) {
      Mat3 gi = Mat3::Zero();
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          gi(j, k) = (p[j] * (i == k ? 1.0 : 0.0) - p[k] * (i == j ? 1.0 : 0.0)) / r2;
        }
      g[i] = gi;
    }
    return g;
  };
  c.analytic_derivs = [](const Vec3& p) {
    const double r2 = p.squaredNorm();
    if (r2 == 0.0) throw std::domain_error("pryce_gamma: p = 0 excluded");
    std::array<std::array<Mat3, 3>, 3> d;
    for (int l = 0; l < 3; ++l) {
      for (int i = 0; i < 3; ++i) {
        Mat3 m = Mat3::Zero();
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const double num = p[j] * (i == k ? 1.0 : 0.0) - p[k] * (i == j ? 1.0 : 0.0);
            const double dnum = (j == l ? 1.0 : 0.0) * (i == k ? 1.0 : 0.0) -
                                (k == l ? 1.0 : 0.0) * (i == j ? 1.0 : 0.0);
            m(j, k) = dnum / r2 - 2.0 * p[l] * num / (r2 * r2);
          }
        d[l][i] = m;
      }
    }
    return d;
  };
  return c;
}

TorsionTensor torsion(const ConnectionCoeffs& c, const Vec3& point) {
  const auto g = c.gamma(point);
  TorsionTensor out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out.t[i][j][k] = g[i](k, j) - g[j](k, i);
  return out;
}

CurvatureTensor curvature(const ConnectionCoeffs& c, const Vec3& point) {
  const auto g = c.gamma(point);
  std::array<std::array<Mat3, 3>, 3> d;
  if (c.analytic_derivs) {
    d = c.analytic_derivs(point);
  } else {
    for (int l = 0; l < 3; ++l) d[l] = fd_gamma_derivs_axis(c.gamma, point, l);
  }
  CurvatureTensor out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.r[i][j] = d[i][j] - d[j][i] + g[i] * g[j] - g[j] * g[i];
    }
  return out;
}

SemiSymmetryReport semi_symmetry_test(const ConnectionCoeffs& c, const Vec3& point,
                                      const MetricField& metric, double tol) {
  const TorsionTensor T = torsion(c, point);
  SemiSymmetryReport out;
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += T.t[i][j][i];
    out.tau[j] = 0.5 * s;
  }
  double res = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double predicted = (i == k ? out.tau[j] : 0.0) - (j == k ? out.tau[i] : 0.0);
        res = std::max(res, std::abs(T.t[i][j][k] - predicted));
      }
  out.residual = res;
  out.verdict = res < tol;

  if (metric) {
    // Levi-Civita of the supplied metric field by Richardson differences.
    const Mat3 g = metric(point);
    const Mat3 ginv = g.inverse();
    std::array<Mat3, 3> dg;
    for (int l = 0; l < 3; ++l) {
      const double h = 1e-5 * (1.0 + point.norm());
      Vec3 e = Vec3::Zero();
      e[l] = 1.0;
      auto central = [&](double step) {
        return Mat3((metric(point + step * e) - metric(point - step * e)) /
                    (2.0 * step));
      };
      dg[l] = (4.0 * central(h / 2.0) - central(h)) / 3.0;
    }
    auto lc = [&](int i, int k, int j) {  // LeviCivita_{ik}^j
      double s = 0.0;
      for (int l = 0; l < 3; ++l) {
        s += 0.5 * ginv(j, l) * (dg[i](k, l) + dg[k](i, l) - dg[l](i, k));
      }
      return s;
    };
    const Vec3 tau_up = ginv * out.tau;
    const auto gamma = c.gamma(point);
    double mres = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
          const double predicted =
              lc(i, k, j) + (i == j ? out.tau[k] : 0.0) - g(i, k) * tau_up[j];
          mres = std::max(mres, std::abs(gamma[i](j, k) - predicted));
        }
    out.metric_residual = mres;
    out.verdict = out.verdict && mres < tol;
  }
  return out;
}

std::array<Mat3, 3> teleparallel_gamma_cartesian(const Vec3& p, double angle_guard) {
  const StereoPoint s = to_stereo(p, angle_guard);
  const ConnectionCoeffs tp = teleparallel_gamma();
  const auto gs = tp.gamma(s.coords());
  const Mat3 B = stereo_jacobian(p);  // B(a, i) = d s^a / d p_i
  const Mat3 A = B.inverse();         // A(k, c) = d p^k / d s^c

  // Second derivatives d^2 s^c / dp_i dp_j by Richardson differences of B.
  std::array<Mat3, 3> d2s;  // d2s[c](i, j)
  {
    std::array<Mat3, 3> dB;  // dB[l] = d B / d p_l
    for (int l = 0; l < 3; ++l) {
      const double h = 1e-5 * (1.0 + p.norm());
      Vec3 e = Vec3::Zero();
      e[l] = 1.0;
      auto central = [&](double step) {
        return Mat3((stereo_jacobian(p + step * e) - stereo_jacobian(p - step * e)) /
                    (2.0 * step));
      };
      dB[l] = (4.0 * central(h / 2.0) - central(h)) / 3.0;
    }
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d2s[c](i, j) = dB[j](c, i);
  }

  std::array<Mat3, 3> out;  // out[i](k, j) = Gamma_{ij}^k in Cartesian chart
  for (int i = 0; i < 3; ++i) {
    Mat3 gi = Mat3::Zero();
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) {
        double v = 0.0;
        for (int c = 0; c < 3; ++c) {
          double inner = d2s[c](i, j);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) inner += B(a, i) * B(b, j) * gs[a](c, b);
          v += A(k, c) * inner;
        }
        gi(k, j) = v;
      }
    out[i] = gi;
  }
  return out;
}

std::array<Mat3, 3> connection_difference(const Vec3& p, double angle_guard) {
  const auto hb = teleparallel_gamma_cartesian(p, angle_guard);
  const auto pr = pryce_gamma().gamma(p);
  std::array<Mat3, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = hb[i] - pr[i];
  return out;
}

}  // namespace lightcone
