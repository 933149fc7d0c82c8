#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lightcone/linalg.hpp"
#include "lightcone/localization.hpp"

namespace lightcone {

/// Uniform N^3 momentum grid on [-P_max, P_max), p_k = (k - N/2) dp.
/// The conjugate position grid is cell-centered about x0:
/// x_j = x0 + (j - N/2 + 1/2) dx with dx dp = 2 pi / N.
struct GridSpec {
  int n = 128;
  double pmax = 40.0;
  Vec3 x0 = Vec3::Zero();

  double dp() const { return 2.0 * pmax / n; }
  double dx() const;
  void validate() const;
};

/// A C^3 field sampled in momentum space, component-major storage,
/// row-major site order (x, y, z).
struct GridField {
  GridSpec spec;
  std::array<std::vector<Complex>, 3> comp;

  std::size_t sites() const { return comp[0].size(); }
  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * spec.n + iy) * spec.n + iz;
  }
  Vec3 p_at(int ix, int iy, int iz) const;
  Vec3 x_at(int ix, int iy, int iz) const;
  CVec3 value(std::size_t site) const {
    return {comp[0][site], comp[1][site], comp[2][site]};
  }
  void set(std::size_t site, const CVec3& v) {
    comp[0][site] = v[0];
    comp[1][site] = v[1];
    comp[2][site] = v[2];
  }
  double norm2() const;  // sum |f|^2 dp^3
};

using PositionSamples = std::array<std::vector<Complex>, 3>;

GridField sample_momentum(const GridSpec& spec,
                          const std::function<CVec3(const Vec3&)>& f);
/// Samples f on the position grid and transforms to momentum space.
GridField sample_position(const GridSpec& spec,
                          const std::function<CVec3(const Vec3&)>& f);

/// f(x) = (2 pi)^{-3/2} integral e^{i p.x} fhat(p) d^3p, discretized so the
/// round trip is the identity and Parseval holds to rounding.
PositionSamples to_position(const GridField& field);
GridField from_position(const GridSpec& spec, const PositionSamples& pos);

double position_norm2(const GridSpec& spec, const PositionSamples& pos);

/// Pointwise transverse projection P = I - pi pi^T (0 at the p = 0 site).
GridField project_transverse(const GridField& field);
/// Pointwise longitudinal projection pi pi^T (identity at the p = 0 site,
/// so transverse + longitudinal resolve the identity on the whole grid).
GridField project_longitudinal(const GridField& field);
/// Pointwise helicity projection (Lambda^2 +- Lambda)/2, sign in {+1,-1}.
GridField project_helicity(const GridField& field, int sign);

/// Longitudinal energy fraction sqrt(sum |pi.f|^2 / sum |f|^2), pi = p/|p|.
double transversality_residual(const GridField& field);

/// Measurable position-space region; box and cylindrical shell helpers.
struct RegionSpec {
  std::function<bool(const Vec3&)> contains;
  std::string label;

  static RegionSpec all();
  static RegionSpec box(const Vec3& lo, const Vec3& hi);
  static RegionSpec cylinder_shell(double r1, double r2, double z1, double z2);
};

/// <f, F(Delta) f>/<f, f> with the positive-operator-valued measure
/// F(Delta) = P E(Delta) P + (I - P) E(Delta) (I - P).
double pov_expectation(const GridField& field, const RegionSpec& region);

/// <f, Q_phi f>/<f, f> with Q_phi = P phi(X1^2 + X2^2) P + (I-P) ... (I-P).
double q_phi_expectation(const GridField& field,
                         const std::function<double(double)>& phi);

/// Washer packet sampled in position space on a grid centered on the
/// washer; throws if the grid under-resolves or does not contain the
/// support. Defaults follow GridSpec{}.
GridField washer_grid(const WasherState& w, GridSpec spec);

/// On-disk layout: one JSON header line (grid metadata), then raw
/// little-endian complex<double> samples, components interleaved per site.
void save_grid_field(const GridField& field, const std::string& path);
GridField load_grid_field(const std::string& path);

}  // namespace lightcone
