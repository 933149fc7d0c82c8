#include <doctest.h>

#include <random>

#include "lightcone/connections.hpp"
#include "lightcone/localization.hpp"

using namespace lightcone;

namespace {

std::mt19937_64 rng(17);

Vec3 random_shell() {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.4, 2.5);
  Vec3 v{nd(rng), nd(rng), nd(rng)};
  while (v.norm() < 1e-3 || v.normalized()[2] > 0.9) v = {nd(rng), nd(rng), nd(rng)};
  return ur(rng) * v.normalized();
}

StereoPoint random_chart_point() {
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  std::uniform_real_distribution<double> uo(0.3, 3.0);
  return {uc(rng), uc(rng), uo(rng)};
}

}  // namespace

TEST_CASE("stereographic chart round trips") {
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 p = random_shell();
    const StereoPoint s = to_stereo(p);
    CHECK((from_stereo(s) - p).norm() < 1e-12 * p.norm());
    CHECK(s.omega == doctest::Approx(p.norm()).epsilon(1e-13));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const StereoPoint s = random_chart_point();
    const StereoPoint back = to_stereo(from_stereo(s));
    CHECK((back.coords() - s.coords()).norm() < 1e-12);
  }
}

TEST_CASE("stereographic chart guards the projection point and the origin") {
  CHECK_THROWS_AS(to_stereo(Vec3{0, 0, 1.5}), std::domain_error);
  CHECK_THROWS_AS(to_stereo(Vec3::Zero()), std::domain_error);
}

TEST_CASE("chart metric spot values") {
  // Projection center (x, y) = (0, 0): conformal factor (2w/a)^2 = w^2,
  // so with w = 1 the angular block is diag(4, 4)/a^2 = ... a = 1 there.
  {
    const ChartMetric m = chart_metric({0.0, 0.0, 1.0});
    Mat3 expect;
    expect << 4, 0, 0, 0, 4, 0, 0, 0, 1;
    CHECK((m.g - expect).norm() < 1e-14);
    CHECK(m.vol_density == doctest::Approx(4.0).epsilon(1e-14));
  }
  {
    const ChartMetric m = chart_metric({1.0, 0.0, 1.0});
    CHECK((m.g - Mat3::Identity()).norm() < 1e-14);
    CHECK(m.vol_density == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("chart metric is the pullback of the euclidean fiber metric") {
  // g_ij = d p / d X^i . d p / d X^j via finite differences of from_stereo.
  for (int trial = 0; trial < 20; ++trial) {
    const StereoPoint s = random_chart_point();
    const ChartMetric m = chart_metric(s);
    Mat3 jac;
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
      Vec3 lo = s.coords(), hi = s.coords();
      lo[i] -= h;
      hi[i] += h;
      jac.col(i) =
          (from_stereo({hi[0], hi[1], hi[2]}) - from_stereo({lo[0], lo[1], lo[2]})) /
          (2 * h);
    }
    CHECK((jac.transpose() * jac - m.g).norm() < 1e-7);
    CHECK((m.g * m.g_inv - Mat3::Identity()).norm() < 1e-12);
    // invariant measure density: sqrt(det g) / omega = 4 omega / a^2
    CHECK(m.vol_density ==
          doctest::Approx(std::sqrt(m.g.determinant()) / s.omega).epsilon(1e-10));
  }
}

TEST_CASE("pushforward frame is orthonormal for the chart metric") {
  for (int trial = 0; trial < 20; ++trial) {
    const StereoPoint s = random_chart_point();
    const ChartMetric m = chart_metric(s);
    const auto e = pushforward_frame(s);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(e[a].dot(m.g * e[b]) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("frame-parallel connection transports its own frame") {
  const ConnectionCoeffs c = teleparallel_gamma();
  for (int trial = 0; trial < 30; ++trial) {
    const StereoPoint s = random_chart_point();
    const auto gamma = c.gamma(s.coords());
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
      Vec3 lo = s.coords(), hi = s.coords();
      lo[i] -= h;
      hi[i] += h;
      const auto ep = pushforward_frame({hi[0], hi[1], hi[2]});
      const auto em = pushforward_frame({lo[0], lo[1], lo[2]});
      for (int a = 0; a < 3; ++a) {
        const Vec3 de = (ep[a] - em[a]) / (2 * h);
        CHECK((de + gamma[i] * pushforward_frame(s)[a]).norm() < 1e-7);
      }
    }
  }
}

TEST_CASE("frame-parallel connection analytic derivatives match FD") {
  const ConnectionCoeffs c = teleparallel_gamma();
  REQUIRE(static_cast<bool>(c.analytic_derivs));
  for (int trial = 0; trial < 10; ++trial) {
    const StereoPoint s = random_chart_point();
    const auto an = c.analytic_derivs(s.coords());
    const double h = 1e-5;
    for (int l = 0; l < 3; ++l) {
      Vec3 lo = s.coords(), hi = s.coords();
      lo[l] -= h;
      hi[l] += h;
      const auto gp = c.gamma(hi);
      const auto gm = c.gamma(lo);
      for (int i = 0; i < 3; ++i)
        CHECK((an[l][i] - (gp[i] - gm[i]) / (2 * h)).norm() < 1e-7);
    }
  }
}

TEST_CASE("frame-parallel connection is flat but not symmetric") {
  const ConnectionCoeffs c = teleparallel_gamma();
  for (int trial = 0; trial < 10; ++trial) {
    const StereoPoint s = random_chart_point();
    CHECK(curvature(c, s.coords()).max_abs() < 1e-10);
    const TorsionTensor t = torsion(c, s.coords());
    double max_t = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          max_t = std::max(max_t, std::abs(t.component(i, j, k)));
    CHECK(max_t > 1e-3);  // torsion genuinely nonzero
  }
}

TEST_CASE("frame-parallel torsion fails the semi-symmetry shape test") {
  // The torsion trace proposes tau_2 = y/a, but the off-trace torsion
  // components disagree with the rank-one shape by exactly |y|/a.
  const ConnectionCoeffs c = teleparallel_gamma();
  const StereoPoint s{0.7, -1.3, 1.4};
  const SemiSymmetryReport rep = semi_symmetry_test(c, s.coords());
  CHECK_FALSE(rep.verdict);
  CHECK(rep.tau[1] == doctest::Approx(s.y / s.a()).epsilon(1e-12));
  CHECK(rep.residual == doctest::Approx(std::abs(s.y) / s.a()).epsilon(1e-12));
}

TEST_CASE("rotation-covariant connection curvature closed form") {
  const ConnectionCoeffs c = pryce_gamma();
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_shell();
    const Vec3 pi = p.normalized();
    const CurvatureTensor r = curvature(c, p);
    // R_ij^k_l = (Sigma_ij Sigma^k_l)/|p|^2 with Sigma_ab = eps_abc pi_c
    const Mat3 sigma = sigma_matrix(pi);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            worst = std::max(worst,
                             std::abs(r.component(i, j, k, l) -
                                      sigma(i, j) * sigma(k, l) / p.squaredNorm()));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("rotation-covariant connection curvature matches FD derivatives") {
  ConnectionCoeffs c = pryce_gamma();
  const ConnectionCoeffs analytic = pryce_gamma();
  c.analytic_derivs = {};  // force the finite-difference path
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    const CurvatureTensor fd = curvature(c, p);
    const CurvatureTensor an = curvature(analytic, p);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, (fd.r[i][j] - an.r[i][j]).norm());
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("rotation-covariant connection is metric semi-symmetric") {
  const ConnectionCoeffs c = pryce_gamma();
  const MetricField euclid = [](const Vec3&) { return Mat3::Identity(); };
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    const SemiSymmetryReport rep = semi_symmetry_test(c, p, euclid);
    CHECK(rep.verdict);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.metric_residual < 1e-12);
    CHECK((rep.tau + p / p.squaredNorm()).norm() < 1e-12);
  }
}

TEST_CASE("connection difference is rank one in the shift vector") {
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_shell();
    const auto diff = connection_difference(p);
    const Vec3 b = hb_shift_vector(p);
    const Mat3 sigma = sigma_matrix(p.normalized());
    // b blows up near the +z ray, so compare relative to its size
    for (int i = 0; i < 3; ++i)
      CHECK((diff[i] - b[i] * sigma).norm() < 1e-9 * (1.0 + b.norm()));
  }
}

TEST_CASE("chart transport preserves flatness") {
  // The frame-parallel connection moved to cartesian momentum coordinates
  // must still have zero curvature (FD derivative path).
  ConnectionCoeffs c;
  c.chart = Chart::Cartesian;
  c.gamma = [](const Vec3& p) { return teleparallel_gamma_cartesian(p); };
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    CHECK(curvature(c, p).max_abs() < 1e-4);  // FD derivative noise only
  }
}
