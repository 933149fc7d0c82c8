#pragma once

namespace lightcone {

/// Bessel function of the first kind, order 1. Relative error <= 1e-10
/// on [0, 100]; odd extension for negative arguments.
double bessel_j1(double x);

/// F(rho) = -i R J1(R rho) appears as F(rho)/rho in circle states; this
/// returns the real ratio J1(R rho)/rho with the series limit R/2 at
/// rho -> 0 (switchover below rho = 1e-6).
double j1_over_rho(double R, double rho);

/// Residual of the order-1 Bessel ODE x^2 y'' + x y' + (x^2 - 1) y at x,
/// evaluated with central differences of step h on the given function.
template <typename F>
double bessel_ode_residual(const F& y, double x, double h = 1e-4) {
  const double yp = (y(x + h) - y(x - h)) / (2.0 * h);
  const double ypp = (y(x + h) - 2.0 * y(x) + y(x - h)) / (h * h);
  return x * x * ypp + x * yp + (x * x - 1.0) * y(x);
}

}  // namespace lightcone
