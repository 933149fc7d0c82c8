#include <doctest.h>

#include <random>

#include "lightcone/cocycle.hpp"
#include "lightcone/polarization.hpp"

using namespace lightcone;

namespace {

std::mt19937_64 rng(13);

Vec3 random_unit() {
  std::normal_distribution<double> nd;
  Vec3 v{nd(rng), nd(rng), nd(rng)};
  while (v.norm() < 1e-3) v = {nd(rng), nd(rng), nd(rng)};
  return v.normalized();
}

Vec3 shell_point_avoiding(const Vec3& axis, double cos_cut = 0.95) {
  std::uniform_real_distribution<double> ur(0.4, 2.5);
  Vec3 p = ur(rng) * random_unit();
  while (std::abs(p.normalized().dot(axis)) > cos_cut) p = ur(rng) * random_unit();
  return p;
}

void check_orthonormal(const FrameTriple& fr, const Vec3& p, double tol) {
  const CVec3 e[3] = {fr.e1(p), fr.e2(p), fr.e3(p)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Complex dot = e[a].dot(e[b]);  // conjugates the left factor
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < tol);
    }
}

}  // namespace

TEST_CASE("hertz basis is orthonormal with e3 along the momentum") {
  for (const Vec3 a : {Vec3{0, 1, 0}, Vec3{1, 0, 0}, random_unit()}) {
    const FrameTriple fr = hertz_basis(a);
    for (int trial = 0; trial < 30; ++trial) {
      const Vec3 p = shell_point_avoiding(a);
      check_orthonormal(fr, p, 1e-13);
      CHECK((fr.e3(p) - p.normalized().cast<Complex>()).norm() < 1e-13);
      // e1 is orthogonal to the reference axis by construction
      CHECK(std::abs(fr.e1(p).dot(a.cast<Complex>())) < 1e-13);
    }
  }
}

TEST_CASE("hertz basis throws on its singular line") {
  const FrameTriple fr = hertz_basis(Vec3{0, 1, 0});
  CHECK_THROWS_AS(fr.e1(Vec3{0, 2.0, 0}), std::domain_error);
  CHECK_THROWS_AS(fr.e1(Vec3{0, -2.0, 0}), std::domain_error);
}

TEST_CASE("boosted hertz basis converges to its closed-form limit") {
  // Oracle: push the basis with the cocycle of a large boost and compare
  // against the closed form; both live over the same momentum p when the
  // basis is evaluated at the pulled-back point.
  const Vec3 a{0, 1, 0};
  for (const Vec3 w : {Vec3{0, 0, 1}, Vec3{1, 0, 0},
                       Vec3{1.0 / std::sqrt(2.0), 0, 1.0 / std::sqrt(2.0)}}) {
    const FrameTriple fr = hertz_basis(a);
    for (int sign : {+1, -1}) {
      const auto [l1, l2] = boosted_basis_limit(w, a, sign);
      const double s = sign * 12.0;
      const LorentzMatrix L = boost_matrix({w, s});
      const LorentzMatrix Linv = boost_matrix({w, -s});
      for (int trial = 0; trial < 20; ++trial) {
        const Vec3 p = shell_point_avoiding(w, 0.9);
        const Vec3 q = act_on_cone(Linv, p, 0.0);
        const Mat3 d = d0(L, q).d;
        CHECK((d * fr.e1(q) - l1(p)).norm() < 1e-4);
        CHECK((d * fr.e2(q) - l2(p)).norm() < 1e-4);
      }
    }
  }
}

TEST_CASE("standard frame is the z-boost limit of the y hertz basis") {
  const auto [l1, l2] = boosted_basis_limit(Vec3{0, 0, 1}, Vec3{0, 1, 0}, -1);
  const FrameTriple fr = standard_frame();
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 p = shell_point_avoiding(Vec3{0, 0, 1});
    CHECK((fr.e1(p) - l1(p)).norm() < 1e-12);
    CHECK((fr.e2(p) - l2(p)).norm() < 1e-12);
  }
}

TEST_CASE("standard frame is orthonormal and right handed") {
  const FrameTriple fr = standard_frame();
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 p = shell_point_avoiding(Vec3{0, 0, 1});
    check_orthonormal(fr, p, 1e-13);
    const CVec3 cross = fr.e1(p).cross(fr.e2(p));
    CHECK((cross - fr.e3(p)).norm() < 1e-13);
  }
}

TEST_CASE("standard frame spot values") {
  const FrameTriple fr = standard_frame();
  // On the -z ray: pi3 = -1, e1 = e_x, e2 = -e_y, e3 = -e_z.
  const Vec3 p{0, 0, -1.7};
  CHECK((fr.e1(p) - CVec3{1, 0, 0}).norm() < 1e-14);
  CHECK((fr.e2(p) - CVec3{0, -1, 0}).norm() < 1e-14);
  CHECK((fr.e3(p) - CVec3{0, 0, -1}).norm() < 1e-14);
}

TEST_CASE("standard frame jacobians agree with finite differences") {
  const FrameTriple fr = standard_frame();
  for (const Section* e : {&fr.e1, &fr.e2, &fr.e3}) {
    REQUIRE(e->has_jacobian());
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 p = shell_point_avoiding(Vec3{0, 0, 1}, 0.8);
      const CMat3 an = e->jacobian(p);
      const CMat3 fd = fd_jacobian(e->eval, p);
      CHECK((an - fd).norm() < 1e-8 * (1.0 + an.norm()));
    }
  }
}

TEST_CASE("standard frame guards the +z ray") {
  const FrameTriple fr = standard_frame();
  REQUIRE(fr.singular_rays.size() == 1);
  CHECK((fr.singular_rays[0] - Vec3{0, 0, 1}).norm() < 1e-14);
  CHECK_THROWS_AS(fr.e1(Vec3{0, 0, 3.0}), std::domain_error);
}

TEST_CASE("complex frame is a unitary helicity pair") {
  const auto [ep, em] = complex_frame();
  const FrameTriple fr = standard_frame();
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 p = shell_point_avoiding(Vec3{0, 0, 1});
    const CVec3 plus = ep(p);
    const CVec3 minus = em(p);
    CHECK(std::abs(plus.dot(plus) - 1.0) < 1e-13);
    CHECK(std::abs(minus.dot(minus) - 1.0) < 1e-13);
    CHECK(std::abs(plus.dot(minus)) < 1e-13);
    // definition in terms of the real frame
    const CVec3 build = (fr.e2(p) + Complex(0, 1) * fr.e1(p)) / std::sqrt(2.0);
    CHECK((plus - build).norm() < 1e-14);
    // helicity eigenvectors: i pi x e+- = -+ e+- (Eigen's complex cross()
    // conjugates, so apply the cross product as a real matrix instead)
    const Vec3 pi = p.normalized();
    const CVec3 lam = Complex(0, 1) * (sigma_matrix(pi).cast<Complex>() * plus);
    CHECK((lam + plus).norm() < 1e-13);
    const CVec3 lam_m = Complex(0, 1) * (sigma_matrix(pi).cast<Complex>() * minus);
    CHECK((lam_m - minus).norm() < 1e-13);
  }
}
