#include <doctest.h>

#include <cstdio>
#include <random>

#include "lightcone/grid_field.hpp"

using namespace lightcone;

namespace {

GridField random_field(int n, double pmax, unsigned seed) {
  GridSpec spec;
  spec.n = n;
  spec.pmax = pmax;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  GridField f;
  f.spec = spec;
  const std::size_t sites = static_cast<std::size_t>(n) * n * n;
  for (auto& c : f.comp) {
    c.resize(sites);
    for (auto& v : c) v = Complex(nd(rng), nd(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((GridSpec{7, 10.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GridSpec{4, 10.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GridSpec{32, -1.0}.validate()), std::domain_error);
  CHECK_NOTHROW((GridSpec{32, 10.0}.validate()));
  const GridSpec s{16, 8.0};
  CHECK(s.dp() == doctest::Approx(1.0));
  CHECK(s.dx() == doctest::Approx(2.0 * M_PI / 16.0));
}

TEST_CASE("momentum and position lattices are conjugate") {
  const GridSpec s{16, 8.0};
  GridField f;
  f.spec = s;
  CHECK((f.p_at(8, 8, 8) - Vec3::Zero()).norm() < 1e-15);
  CHECK(f.p_at(0, 8, 8)[0] == doctest::Approx(-8.0));
  // position sites are cell centered: symmetric about x0
  const Vec3 a = f.x_at(0, 8, 8);
  const Vec3 b = f.x_at(15, 8, 8);
  CHECK(a[0] == doctest::Approx(-b[0]).epsilon(1e-14));
  CHECK(s.dx() * s.dp() == doctest::Approx(2.0 * M_PI / s.n));
}

TEST_CASE("transform round trip is the identity") {
  const GridField f = random_field(16, 6.0, 3);
  const GridField back = from_position(f.spec, to_position(f));
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.sites(); ++i)
      worst = std::max(worst, std::abs(back.comp[c][i] - f.comp[c][i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("transform preserves the norm") {
  const GridField f = random_field(16, 6.0, 4);
  const PositionSamples pos = to_position(f);
  CHECK(position_norm2(f.spec, pos) == doctest::Approx(f.norm2()).epsilon(1e-12));
}

TEST_CASE("a pure plane wave lands on a single momentum site") {
  // e^{i p0.x} sampled in position space must transform to a one-site
  // momentum field at p0; this pins the sign and normalization of the
  // transform against the continuum convention.
  GridSpec spec;
  spec.n = 16;
  spec.pmax = 8.0;
  GridField probe;
  probe.spec = spec;
  const Vec3 p0 = probe.p_at(10, 7, 8);  // exact lattice momentum
  const GridField f = sample_position(spec, [&](const Vec3& x) {
    return CVec3{std::exp(Complex(0.0, p0.dot(x))), 0.0, 0.0};
  });
  const double cell = std::pow(spec.dp(), 3);
  double off_site = 0.0;
  for (int ix = 0; ix < 16; ++ix)
    for (int iy = 0; iy < 16; ++iy)
      for (int iz = 0; iz < 16; ++iz) {
        const Complex v = f.comp[0][f.index(ix, iy, iz)];
        if (ix == 10 && iy == 7 && iz == 8) {
          // weight (2 pi)^{3/2} / dp^3 so the quadrature reproduces e^{ip0.x}
          CHECK(std::abs(v - std::pow(2.0 * M_PI, 1.5) / cell) < 1e-9 * std::abs(v));
        } else {
          off_site = std::max(off_site, std::abs(v));
        }
      }
  CHECK(off_site < 1e-9);
}

TEST_CASE("projections resolve the identity everywhere") {
  const GridField f = random_field(16, 6.0, 5);
  const GridField t = project_transverse(f);
  const GridField l = project_longitudinal(f);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.sites(); ++i)
      worst = std::max(worst,
                       std::abs(t.comp[c][i] + l.comp[c][i] - f.comp[c][i]));
  CHECK(worst < 1e-13);
  // transverse part carries no longitudinal energy
  CHECK(transversality_residual(t) < 1e-13);
  CHECK_THROWS_AS(project_helicity(f, 2), std::invalid_argument);
}

TEST_CASE("helicity projections split the transverse part") {
  const GridField f = random_field(12, 5.0, 6);
  const GridField t = project_transverse(f);
  const GridField hp = project_helicity(f, +1);
  const GridField hm = project_helicity(f, -1);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.sites(); ++i)
      worst = std::max(worst,
                       std::abs(hp.comp[c][i] + hm.comp[c][i] - t.comp[c][i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("full-space localization expectation is exactly one") {
  const GridField f = random_field(12, 5.0, 7);
  CHECK(pov_expectation(f, RegionSpec::all()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complementary regions add up to one") {
  const GridField f = random_field(12, 5.0, 8);
  const RegionSpec left = RegionSpec::box(Vec3{-100, -100, -100}, Vec3{0, 100, 100});
  RegionSpec right;
  right.contains = [](const Vec3& x) { return x[0] > 0.0; };
  const double a = pov_expectation(f, left);
  const double b = pov_expectation(f, right);
  CHECK(a + b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a > 0.0);
  CHECK(b > 0.0);
}

TEST_CASE("region helpers") {
  const RegionSpec box = RegionSpec::box(Vec3{0, 0, 0}, Vec3{1, 2, 3});
  CHECK(box.contains(Vec3{0.5, 1.0, 2.9}));
  CHECK_FALSE(box.contains(Vec3{1.5, 1.0, 1.0}));
  const RegionSpec shell = RegionSpec::cylinder_shell(1.0, 2.0, 0.0, 1.0);
  CHECK(shell.contains(Vec3{1.5, 0.0, 0.5}));
  CHECK_FALSE(shell.contains(Vec3{0.5, 0.0, 0.5}));   // inside the hole
  CHECK_FALSE(shell.contains(Vec3{1.5, 0.0, 1.5}));   // above the slab
}

TEST_CASE("washer sampling rejects hopeless grids") {
  const WasherState w{1.0, std::exp(1.0), 0.0, 2.0 * M_PI};
  GridSpec coarse;
  coarse.n = 64;
  coarse.pmax = 4.0;  // dx = pi/4, far too coarse for the annulus width
  CHECK_THROWS_AS(washer_grid(w, coarse), std::domain_error);
  GridSpec narrow;
  narrow.n = 64;
  narrow.pmax = 40.0;  // window half-width ~2.5 < washer extent
  CHECK_THROWS_AS(washer_grid(WasherState{1.0, 6.0, 0.0, 1.0}, narrow),
                  std::domain_error);
}

TEST_CASE("washer grid norm approaches the closed form") {
  const WasherState w{1.0, std::exp(1.0), 0.0, 2.0 * M_PI};
  GridSpec spec;
  spec.n = 128;
  spec.pmax = 40.0;
  const GridField f = washer_grid(w, spec);
  CHECK(std::abs(f.norm2() - w.squared_norm()) < 1e-3);
  CHECK(transversality_residual(f) < 5e-3);
}

TEST_CASE("grid fields survive a save/load round trip") {
  const GridField f = random_field(12, 5.0, 9);
  const std::string path = "/tmp/lightcone_grid_roundtrip.bin";
  save_grid_field(f, path);
  const GridField g = load_grid_field(path);
  std::remove(path.c_str());
  CHECK(g.spec.n == f.spec.n);
  CHECK(g.spec.pmax == doctest::Approx(f.spec.pmax));
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.sites(); ++i)
      worst = std::max(worst, std::abs(g.comp[c][i] - f.comp[c][i]));
  CHECK(worst == 0.0);  // byte-exact storage
  CHECK_THROWS_AS(load_grid_field("/tmp/does_not_exist_lightcone.bin"),
                  std::runtime_error);
}
