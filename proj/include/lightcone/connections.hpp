#pragma once

#include <array>
#include <functional>

#include "lightcone/linalg.hpp"

namespace lightcone {

/// Stereographic chart point (x, y, omega) on the punctured cone,
/// projected from the unit sphere through its center; omega = |p|.
struct StereoPoint {
  double x = 0.0;
  double y = 0.0;
  double omega = 1.0;

  double a() const { return 1.0 + x * x + y * y; }
  Vec3 coords() const { return {x, y, omega}; }
};

enum class Chart { Stereographic, Cartesian };

/// Connection coefficients Gamma_i as three 3x3 matrices at a chart point:
/// gamma(s)[i](k, j) = Gamma_{ij}^k, so gamma[i] acts on fiber vectors.
struct ConnectionCoeffs {
  Chart chart = Chart::Cartesian;
  std::function<std::array<Mat3, 3>(const Vec3&)> gamma;
  // analytic_derivs(point)[l][i] = d Gamma_i / d X^l; empty -> FD fallback
  std::function<std::array<std::array<Mat3, 3>, 3>(const Vec3&)> analytic_derivs;
};

/// T_{ij}^k = Gamma_{ij}^k - Gamma_{ji}^k; component(i, j, k), 0-based.
struct TorsionTensor {
  std::array<std::array<Vec3, 3>, 3> t;  // t[i][j][k]
  double component(int i, int j, int k) const { return t[i][j][k]; }
};

/// R_{ij}^k_l, antisymmetric in (i, j) by construction.
struct CurvatureTensor {
  std::array<std::array<Mat3, 3>, 3> r;  // r[i][j](k, l)
  double component(int i, int j, int k, int l) const { return r[i][j](k, l); }
  double max_abs() const;
};

struct SemiSymmetryReport {
  Vec3 tau;          // candidate 1-form tau_j = T_{ij}^i / 2
  double residual;   // max |T_{ij}^k - (delta_i^k tau_j - delta_j^k tau_i)|
  bool verdict;      // residual < tol (and metric decomposition, if checked)
  double metric_residual = 0.0;  // Levi-Civita decomposition residual
};

StereoPoint to_stereo(const Vec3& p, double angle_guard = 1e-8);
Vec3 from_stereo(const StereoPoint& s);

/// Standard frame pushed to stereographic components:
/// e1 = (a/(2w), 0, 0), e2 = (0, -a/(2w), 0), e3 = (0, 0, 1).
std::array<Vec3, 3> pushforward_frame(const StereoPoint& s);

struct ChartMetric {
  Mat3 g;
  Mat3 g_inv;
  double vol_density;  // 4 omega / a^2
};
ChartMetric chart_metric(const StereoPoint& s);

/// Teleparallel connection of the standard frame, stereographic chart:
/// Gamma_1 = (-2x/a) E, Gamma_2 = (-2y/a) E, Gamma_3 = (1/omega) E,
/// E = diag(1,1,0). Carries analytic derivatives.
ConnectionCoeffs teleparallel_gamma();

/// Pryce connection, Cartesian chart:
/// Gamma_{ik}^j = (pi^j delta_{ik} - pi_k delta_i^j)/|p|. Analytic derivs.
ConnectionCoeffs pryce_gamma();

TorsionTensor torsion(const ConnectionCoeffs& c, const Vec3& point);

/// R_ij = d_i Gamma_j - d_j Gamma_i + [Gamma_i, Gamma_j]; uses analytic
/// derivatives when present, Richardson finite differences otherwise.
CurvatureTensor curvature(const ConnectionCoeffs& c, const Vec3& point);

/// Plain semi-symmetry test on the torsion; if a metric field is supplied,
/// additionally checks the decomposition
/// Gamma = LeviCivita(g) + delta tau - g tau.
using MetricField = std::function<Mat3(const Vec3&)>;
SemiSymmetryReport semi_symmetry_test(const ConnectionCoeffs& c, const Vec3& point,
                                      const MetricField& metric = {},
                                      double tol = 1e-9);

/// Gamma^HB - Gamma^PR in the Cartesian chart (teleparallel transported
/// through the chart change), returned as diff[i](k, j); also equal to
/// b_i Sigma^k_j with b = (pi x e_z)/(|p| - p3).
std::array<Mat3, 3> connection_difference(const Vec3& p, double angle_guard = 1e-8);

/// Tensorial change of chart for connection coefficients: transports the
/// stereographic teleparallel Gamma to Cartesian momentum coordinates.
std::array<Mat3, 3> teleparallel_gamma_cartesian(const Vec3& p,
                                                 double angle_guard = 1e-8);

}  // namespace lightcone
