#pragma once

#include <cstdint>
#include <vector>

#include "lightcone/section.hpp"

namespace lightcone {

enum class QuadScheme { SphericalProduct, MonteCarlo };

/// Numerical integration over momentum space in spherical coordinates.
/// SphericalProduct: Gauss-Legendre in log-radius x Gauss-Legendre in
/// cos(theta) x uniform trapezoid in phi. MonteCarlo: importance-free
/// sampling, log-uniform in radius.
struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::SphericalProduct;
  int n_radial = 48;
  int n_theta = 32;
  int n_phi = 64;
  double r_min = 1e-3;
  double r_max = 1e3;
  std::uint64_t mc_samples = 200000;
  std::uint64_t mc_seed = 1;

  void validate() const;
};

struct InnerProductResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;  // disagreement under node doubling
  bool converged = true;
  operator Complex() const { return value; }
};

/// <f, g> = integral of conj(f).g dmu, dmu = d^3p/|p| (Invariant) or d^3p
/// (Plain). Conjugate-linear in the first argument. The result carries a
/// node-doubling error estimate; converged is false if it exceeds tol.
InnerProductResult inner_product(const Section& f, const Section& g,
                                 MeasureKind measure, const QuadratureSpec& quad,
                                 double tol = 1e-6);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace lightcone
