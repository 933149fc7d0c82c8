#include "lightcone/bessel.hpp"

#include <cmath>

namespace lightcone {

double bessel_j1(double x) { return std::cyl_bessel_j(1, std::abs(x)) * (x < 0 ? -1.0 : 1.0); }

double j1_over_rho(double R, double rho) {
  if (rho < 1e-6) return R / 2.0;  // J1(z) = z/2 + O(z^3)
  return bessel_j1(R * rho) / rho;
}

}  // namespace lightcone
