#include "lightcone/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace lightcone {

void QuadratureSpec::validate() const {
  if (r_min <= 0.0 || r_max <= r_min) {
    throw std::domain_error("QuadratureSpec: need 0 < r_min < r_max");
  }
  if (n_radial < 2 || n_theta < 2 || n_phi < 2) {
    throw std::domain_error("QuadratureSpec: node counts must be >= 2");
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from the Chebyshev initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

Complex integrate_spherical(const Section& f, const Section& g,
                            MeasureKind measure, const QuadratureSpec& q) {
  std::vector<double> ur, wr, ut, wt;
  gauss_legendre(q.n_radial, ur, wr);
  gauss_legendre(q.n_theta, ut, wt);
  const double lo = std::log(q.r_min), hi = std::log(q.r_max);
  const double wphi = 2.0 * std::numbers::pi / q.n_phi;
  Complex acc(0.0, 0.0);
  for (int ir = 0; ir < q.n_radial; ++ir) {
    const double u = 0.5 * (hi - lo) * ur[ir] + 0.5 * (hi + lo);
    const double r = std::exp(u);
    // d^3p = r^3 du dOmega in log radius; invariant measure divides by r.
    const double rad_w = 0.5 * (hi - lo) * wr[ir] *
                         (measure == MeasureKind::Invariant ? r * r : r * r * r);
    for (int it = 0; it < q.n_theta; ++it) {
      const double ct = ut[it];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int ip = 0; ip < q.n_phi; ++ip) {
        const double phi = wphi * ip;
        const Vec3 p(r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
        acc += rad_w * wt[it] * wphi * f.eval(p).dot(g.eval(p));
      }
    }
  }
  return acc;
}

Complex integrate_mc(const Section& f, const Section& g, MeasureKind measure,
                     const QuadratureSpec& q, std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double lo = std::log(q.r_min), hi = std::log(q.r_max);
  const double vol = (hi - lo) * 4.0 * std::numbers::pi;
  Complex acc(0.0, 0.0);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double r = std::exp(lo + (hi - lo) * uni(rng));
    const double ct = 2.0 * uni(rng) - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = 2.0 * std::numbers::pi * uni(rng);
    const Vec3 p(r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
    const double jac = (measure == MeasureKind::Invariant) ? r * r : r * r * r;
    acc += jac * f.eval(p).dot(g.eval(p));
  }
  return acc * (vol / static_cast<double>(n));
}

}  // namespace

InnerProductResult inner_product(const Section& f, const Section& g,
                                 MeasureKind measure, const QuadratureSpec& quad,
                                 double tol) {
  quad.validate();
  InnerProductResult out;
  if (quad.scheme == QuadScheme::SphericalProduct) {
    // Eigen's dot() conjugates its first argument, matching <f, g>.
    const Complex coarse = integrate_spherical(f, g, measure, quad);
    QuadratureSpec fine = quad;
    fine.n_radial *= 2;
    fine.n_theta *= 2;
    fine.n_phi *= 2;
    const Complex refined = integrate_spherical(f, g, measure, fine);
    out.value = refined;
    out.error_estimate = std::abs(refined - coarse);
  } else {
    const Complex half = integrate_mc(f, g, measure, quad, quad.mc_samples / 2, quad.mc_seed);
    const Complex full = integrate_mc(f, g, measure, quad, quad.mc_samples, quad.mc_seed + 1);
    out.value = full;
    out.error_estimate = std::abs(full - half);
  }
  out.converged = out.error_estimate <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

}  // namespace lightcone
