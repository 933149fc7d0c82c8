#include <doctest.h>

#include <random>

#include "lightcone/catalog.hpp"
#include "lightcone/representation.hpp"

using namespace lightcone;

namespace {

std::mt19937_64 rng(11);

Vec3 random_unit() {
  std::normal_distribution<double> nd;
  Vec3 v{nd(rng), nd(rng), nd(rng)};
  while (v.norm() < 1e-3) v = {nd(rng), nd(rng), nd(rng)};
  return v.normalized();
}

Vec3 random_shell() {
  std::uniform_real_distribution<double> ur(0.4, 2.5);
  Vec3 p = ur(rng) * random_unit();
  // stay away from the +z ray where the frame sections blow up
  while (p.normalized()[2] > 0.9) p = ur(rng) * random_unit();
  return p;
}

LorentzMatrix random_lorentz() {
  std::uniform_real_distribution<double> us(-1.5, 1.5);
  std::uniform_real_distribution<double> ua(0.0, 6.28318);
  return rotation_matrix(random_unit(), ua(rng)) *
         boost_matrix({random_unit(), us(rng)});
}

double sup_diff(const Section& a, const Section& b, int n_points = 25) {
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const Vec3 p = random_shell();
    worst = std::max(worst, (a(p) - b(p)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("lorentz action composes") {
  const Section f = catalog_section("gauss-circ");
  for (int trial = 0; trial < 5; ++trial) {
    const LorentzMatrix l1 = random_lorentz();
    const LorentzMatrix l2 = random_lorentz();
    const Section lhs = apply_lorentz(l1, apply_lorentz(l2, f));
    const Section rhs = apply_lorentz(l1 * l2, f);
    CHECK(sup_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("lorentz action round trips through the inverse") {
  const Section f = catalog_section("gauss-x");
  for (auto measure : {MeasureKind::Invariant, MeasureKind::Plain}) {
    const LorentzMatrix L = random_lorentz();
    const Mat4 Linv = L.inverse();
    const Section back = apply_lorentz(Linv, apply_lorentz(L, f, measure), measure);
    CHECK(sup_diff(back, f) < 1e-10);
  }
}

TEST_CASE("lorentz action preserves the invariant scalar product") {
  const Section f = catalog_section("gauss-x");
  const Section g = catalog_section("gauss-circ");
  QuadratureSpec quad;
  quad.n_radial = 32;
  quad.n_theta = 24;
  quad.n_phi = 48;
  quad.r_min = 1e-2;
  quad.r_max = 50.0;
  const Complex before = inner_product(f, g, MeasureKind::Invariant, quad).value;
  const LorentzMatrix L = boost_matrix({Vec3{0.6, 0.0, 0.8}, 0.7});
  const Complex after = inner_product(apply_lorentz(L, f), apply_lorentz(L, g),
                                      MeasureKind::Invariant, quad)
                            .value;
  CHECK(std::abs(after - before) < 1e-6 * std::abs(before));
}

TEST_CASE("translation is the expected multiplication phase") {
  const Section f = catalog_section("gauss-y");
  const FourVector a{0.7, Vec3{0.1, -0.4, 1.2}};
  const Section g = apply_translation(a, f);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p = random_shell();
    const Complex phase =
        std::exp(Complex(0.0, a.p.dot(p) - a.p0 * p.norm()));
    CHECK((g(p) - phase * f(p)).norm() < 1e-14);
  }
}

TEST_CASE("parity and time reversal are involutions") {
  const Section f = catalog_section("poly-gauss");
  CHECK(sup_diff(parity(parity(f)), f) < 1e-14);
  CHECK(sup_diff(time_reversal(time_reversal(f)), f) < 1e-14);
}

TEST_CASE("parity anticommutes with momentum multiplication") {
  const Section f = catalog_section("gauss-circ");
  const Section lhs = parity(generator_apply(GeneratorName::P, 2, f));
  const Section rhs =
      Complex(-1.0, 0.0) * generator_apply(GeneratorName::P, 2, parity(f));
  CHECK(sup_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("time reversal is antilinear") {
  const Section f = catalog_section("gauss-x");
  const Complex c{0.3, -1.2};
  const Section lhs = time_reversal(c * f);
  const Section rhs = std::conj(c) * time_reversal(f);
  CHECK(sup_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("helicity operator satisfies its minimal polynomial") {
  // spectrum {-1, 0, +1}: Lambda^3 = Lambda pointwise
  const Section f = catalog_section("gauss-wide");
  const Section lhs = helicity_apply(helicity_apply(helicity_apply(f)));
  const Section rhs = helicity_apply(f);
  CHECK(sup_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("analytic generators match the flow derivative") {
  const Section f = catalog_section("gauss-circ");
  using G = GeneratorName;
  for (auto g : {G::P0, G::P, G::L, G::K, G::M, G::N, G::S, G::SmallK}) {
    for (int comp = 1; comp <= (g == G::P0 ? 1 : 3); ++comp) {
      const Section an = generator_apply(g, comp, f);
      const Section fd = generator_fd(g, comp, f);
      CHECK_MESSAGE(sup_diff(an, fd, 10) < 1e-5,
                    "generator ", static_cast<int>(g), " component ", comp);
    }
  }
}

TEST_CASE("flow finite difference converges at second order") {
  const Section f = catalog_section("gauss-x");
  const Section an = generator_apply(GeneratorName::N, 2, f);
  const Vec3 p{0.8, -0.5, 0.3};
  const double e1 = (generator_fd(GeneratorName::N, 2, f, 0.16)(p) - an(p)).norm();
  const double e2 = (generator_fd(GeneratorName::N, 2, f, 0.08)(p) - an(p)).norm();
  CHECK(e1 / e2 > 3.5);  // clean h^2 would give 4
}

TEST_CASE("plain-measure boost generator stays consistent with its flow") {
  const Section f = catalog_section("gauss-y");
  for (int comp = 1; comp <= 3; ++comp) {
    const Section an = generator_apply(GeneratorName::N, comp, f, MeasureKind::Plain);
    const Section fd = generator_fd(GeneratorName::N, comp, f, 1e-4, MeasureKind::Plain);
    CHECK(sup_diff(an, fd, 10) < 1e-5);
  }
}

TEST_CASE("time component of the spin four-vector is helicity times energy") {
  const Section f = catalog_section("gauss-circ");
  const auto w = pauli_lubanski(f);
  const Section expect =
      generator_apply(GeneratorName::P0, 1, helicity_apply(f));
  CHECK(sup_diff(w[0], expect) < 1e-8);
}

TEST_CASE("boost eigenmodes diagonalize the z boost") {
  for (double lambda : {-1.0, 0.5}) {
    const Section f = boost_eigenmode(2, lambda);
    const Section nf = generator_apply(GeneratorName::N, 3, f,
                                       MeasureKind::Invariant, true);
    for (int i = 0; i < 10; ++i) {
      const Vec3 p = random_shell();
      CHECK((nf(p) - lambda * f(p)).norm() < 1e-6);
    }
  }
}

TEST_CASE("boost eigenmode rejects bad frame index") {
  CHECK_THROWS_AS(boost_eigenmode(4, 1.0), std::invalid_argument);
}
