#include <doctest.h>

#include <random>

#include "lightcone/bessel.hpp"
#include "lightcone/catalog.hpp"
#include "lightcone/localization.hpp"
#include "lightcone/representation.hpp"

using namespace lightcone;

namespace {

std::mt19937_64 rng(19);

Vec3 random_shell() {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.4, 2.5);
  Vec3 v{nd(rng), nd(rng), nd(rng)};
  while (v.norm() < 1e-3 || v.normalized()[2] > 0.9) v = {nd(rng), nd(rng), nd(rng)};
  return ur(rng) * v.normalized();
}

}  // namespace

TEST_CASE("shift vector closed form and guards") {
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 p = random_shell();
    const Vec3 pi = p.normalized();
    const Vec3 expect = pi.cross(Vec3{0, 0, 1}) / (p.norm() - p[2]);
    CHECK((hb_shift_vector(p) - expect).norm() < 1e-13);
    // orthogonal to both pi and e_z
    CHECK(std::abs(hb_shift_vector(p).dot(pi)) < 1e-13);
    CHECK(std::abs(hb_shift_vector(p)[2]) < 1e-15);
  }
  CHECK_THROWS_AS(hb_shift_vector(Vec3::Zero()), std::domain_error);
  CHECK_THROWS_AS(hb_shift_vector(Vec3{0, 0, 2.0}), std::domain_error);
}

TEST_CASE("flat position operator is i d/dp") {
  const Section f = catalog_section("gauss-circ");
  for (int j = 1; j <= 3; ++j) {
    const Section qf = position_apply(PositionKind::Flat, j, f);
    for (int trial = 0; trial < 15; ++trial) {
      const Vec3 p = random_shell();
      const CVec3 expect = Complex(0, 1) * f.jacobian(p).col(j - 1);
      CHECK((qf(p) - expect).norm() < 1e-13);
    }
  }
}

TEST_CASE("position operators differ by the shift vector times helicity") {
  const Section f = catalog_section("gauss-y");
  for (int j = 1; j <= 3; ++j) {
    const Section hb = position_apply(PositionKind::HawtonBaylis, j, f);
    const Section pr = position_apply(PositionKind::Pryce, j, f);
    const Section lam = helicity_apply(f);
    for (int trial = 0; trial < 15; ++trial) {
      const Vec3 p = random_shell();
      const CVec3 expect = pr(p) + hb_shift_vector(p)[j - 1] * lam(p);
      CHECK((hb(p) - expect).norm() < 1e-12);
    }
  }
}

TEST_CASE("finite-difference fallback agrees with the analytic jacobian path") {
  const Section smooth = catalog_section("gauss-x");
  Section stripped = smooth;
  stripped.jacobian = {};
  stripped.hessian = {};
  const Section an = position_apply(PositionKind::Pryce, 2, smooth);
  const Section fd = position_apply(PositionKind::Pryce, 2, stripped, true);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    CHECK((an(p) - fd(p)).norm() < 1e-8);
  }
  CHECK_THROWS_AS(position_apply(PositionKind::Pryce, 2, stripped, false)(Vec3{1, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("commutator residuals vanish for the commuting kinds") {
  const Section f = catalog_section("gauss-circ");
  for (auto kind : {PositionKind::HawtonBaylis, PositionKind::Flat}) {
    const Section r = commutator_residual(kind, 1, 2, f);
    for (int trial = 0; trial < 8; ++trial) {
      CHECK(r(random_shell()).norm() < 1e-6);
    }
  }
}

TEST_CASE("noncommuting pair matches the curvature prediction") {
  const Section f = catalog_section("poly-gauss");
  const std::pair<int, int> pairs[] = {{1, 2}, {2, 3}, {3, 1}};
  for (auto [i, j] : pairs) {
    const Section comm = position_commutator(PositionKind::Pryce, i, j, f);
    const Section resid = commutator_residual(PositionKind::Pryce, i, j, f);
    const Section lam = helicity_apply(f);
    for (int trial = 0; trial < 8; ++trial) {
      const Vec3 p = random_shell();
      const int k = 6 - i - j;  // the third index; all three pairs are cyclic
      const CVec3 predict =
          Complex(0, -1) * (p[k - 1] / std::pow(p.norm(), 3)) * lam(p);
      CHECK((comm(p) - predict).norm() < 1e-6);
      CHECK(resid(p).norm() < 1e-6);
    }
  }
}

TEST_CASE("circle state analytic derivatives agree with finite differences") {
  const Section f = circle_state(1.3);
  REQUIRE(f.has_jacobian());
  REQUIRE(f.has_hessian());
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    CHECK((f.jacobian(p) - fd_jacobian(f.eval, p)).norm() < 1e-7);
    const auto hfd = fd_hessian(f.eval, p);
    const auto han = f.hessian(p);
    for (int i = 0; i < 3; ++i) CHECK((han[i] - hfd[i]).norm() < 1e-5);
  }
}

TEST_CASE("circle state eigenrelations") {
  const double R = 0.8;
  const Section f = circle_state(R);
  const Section m3 = generator_apply(GeneratorName::M, 3, f);
  const Section q3 = position_apply(PositionKind::HawtonBaylis, 3, f);
  const Section q1q1 = position_apply(PositionKind::HawtonBaylis, 1,
                                      position_apply(PositionKind::HawtonBaylis, 1, f));
  const Section q2q2 = position_apply(PositionKind::HawtonBaylis, 2,
                                      position_apply(PositionKind::HawtonBaylis, 2, f));
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_shell();
    CHECK(m3(p).norm() < 1e-8);
    CHECK(q3(p).norm() < 1e-8);
    CHECK((q1q1(p) + q2q2(p) - R * R * f(p)).norm() < 1e-7);
  }
}

TEST_CASE("circle state rejects nonpositive radius") {
  CHECK_THROWS_AS(circle_state(0.0), std::domain_error);
}

TEST_CASE("planar loop integral reproduces the circle closed form") {
  const double R = 1.1;
  LoopSpec spec;
  spec.r = [R](double t) { return Vec3{R * std::cos(t), R * std::sin(t), 0.0}; };
  spec.velocity = [R](double t) {
    return Vec3{-R * std::sin(t), R * std::cos(t), 0.0};
  };
  spec.n_nodes = 2048;
  const Section loop = loop_state(spec);
  const Section closed = circle_state(R);
  for (int trial = 0; trial < 15; ++trial) {
    const Vec3 p = random_shell();
    CHECK((loop(p) - closed(p)).norm() < 1e-8);
  }
}

TEST_CASE("loop states are transverse by closedness") {
  LoopSpec spec;
  spec.r = [](double t) {
    return Vec3{std::cos(t), 0.7 * std::sin(t), 0.2 * std::sin(2 * t)};
  };
  spec.velocity = [](double t) {
    return Vec3{-std::sin(t), 0.7 * std::cos(t), 0.4 * std::cos(2 * t)};
  };
  const Section f = loop_state(spec);
  for (int trial = 0; trial < 15; ++trial) {
    const Vec3 p = random_shell();
    CHECK(std::abs(p.cast<Complex>().dot(f(p))) < 1e-10);
  }
}

TEST_CASE("open curves are rejected") {
  LoopSpec spec;
  spec.r = [](double t) { return Vec3{t, 0.0, 0.0}; };
  CHECK_THROWS_AS(loop_state(spec), std::domain_error);
}

TEST_CASE("washer geometry validation and norm") {
  CHECK_THROWS_AS((WasherState{2.0, 1.0, 0.0, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((WasherState{0.0, 1.0, 0.0, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((WasherState{1.0, 2.0, 1.0, 1.0}.validate()), std::domain_error);
  const WasherState w{1.0, std::exp(1.0), 0.0, 2.0 * M_PI};
  CHECK(w.squared_norm() == doctest::Approx(1.0).epsilon(1e-14));
  const WasherState v{0.5, 2.0, -1.0, 3.0};
  CHECK(v.squared_norm() ==
        doctest::Approx(4.0 * std::log(4.0) / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("washer density is azimuthal with 1/(2 pi r) magnitude") {
  const WasherState w{1.0, 2.0, 0.0, 1.0};
  const Vec3 inside{1.2, 0.9, 0.5};
  const double r = std::hypot(inside[0], inside[1]);
  const CVec3 val = w.position_form(inside);
  CHECK(std::abs(val.norm() - 1.0 / (2.0 * M_PI * r)) < 1e-14);
  // direction (-sin phi, cos phi, 0) = (-y, x, 0)/r
  const CVec3 dir{-inside[1] / r, inside[0] / r, 0.0};
  CHECK((val - val.norm() * dir).norm() < 1e-14);
  CHECK(w.position_form(Vec3{0.5, 0.0, 0.5}).norm() == 0.0);   // inner hole
  CHECK(w.position_form(Vec3{1.5, 0.0, -0.2}).norm() == 0.0);  // below the slab
}

TEST_CASE("bessel ratio limit") {
  CHECK(j1_over_rho(3.0, 1e-9) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(j1_over_rho(3.0, 0.5) == doctest::Approx(bessel_j1(1.5) / 0.5).epsilon(1e-13));
}
