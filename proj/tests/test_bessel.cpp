#include <doctest.h>

#include <cmath>
#include <vector>

#include "lightcone/bessel.hpp"
#include "lightcone/quadrature.hpp"

using namespace lightcone;

namespace {

// Oracle 1: the power series, accurate in long double up to x ~ 14.
long double j1_series(long double x) {
  const long double half = x / 2.0L;
  long double term = half;
  long double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -half * half / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-25L * std::fabs(sum)) break;
  }
  return sum;
}

// Oracle 2: the integral representation (1/pi) int_0^pi cos(theta - x sin
// theta) dtheta, evaluated with a fine composite Simpson rule.
double j1_integral(double x) {
  const int n = 4000;  // even
  const double h = M_PI / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double theta = k * h;
    const double f = std::cos(theta - x * std::sin(theta));
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / (3.0 * M_PI);
}

}  // namespace

TEST_CASE("order-one bessel function against the series oracle") {
  for (double x = 0.0; x <= 14.0; x += 0.0625) {
    const double ref = static_cast<double>(j1_series(x));
    CHECK(std::abs(bessel_j1(x) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("order-one bessel function against the integral oracle") {
  for (double x = 0.0; x <= 100.0; x += 0.73) {
    const double ref = j1_integral(x);
    CHECK(std::abs(bessel_j1(x) - ref) < 1e-10);
  }
}

TEST_CASE("odd extension") {
  for (double x : {0.3, 2.7, 15.0, 60.0}) {
    CHECK(bessel_j1(-x) == doctest::Approx(-bessel_j1(x)).epsilon(1e-14));
  }
  CHECK(bessel_j1(0.0) == 0.0);
}

TEST_CASE("first positive zero") {
  // bisection against the implementation itself; the reference value is the
  // classical tabulated root of J1
  double lo = 3.0, hi = 4.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j1(lo) * bessel_j1(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(3.8317059702075123).epsilon(1e-10));
}

TEST_CASE("differential equation residual") {
  // x^2 y'' + x y' + (x^2 - 1) y = 0; FD residual small relative to the
  // scale x^2 |y| of the individual terms
  for (double x : {0.7, 1.9, 5.3, 11.0, 40.0}) {
    const double res = bessel_ode_residual([](double t) { return bessel_j1(t); }, x);
    CHECK(std::abs(res) < 1e-5 * x * x);
  }
}

TEST_CASE("ratio helper limit and continuity at the switchover") {
  CHECK(j1_over_rho(2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double below = j1_over_rho(2.0, 0.999e-6);
  const double above = j1_over_rho(2.0, 1.001e-6);
  CHECK(std::abs(below - above) < 1e-12);
  CHECK(j1_over_rho(1.5, 2.0) ==
        doctest::Approx(bessel_j1(3.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre(8, nodes, weights);
  REQUIRE(nodes.size() == 8);
  double total = 0.0, x2 = 0.0, x14 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += weights[i];
    x2 += weights[i] * nodes[i] * nodes[i];
    x14 += weights[i] * std::pow(nodes[i], 14);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // degree 14 < 2n = 16: still exact
  CHECK(x14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}
