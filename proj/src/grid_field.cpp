#include "lightcone/grid_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lightcone {

namespace {

constexpr Complex kI{0.0, 1.0};

void fft3(std::vector<Complex>& a, int n, int sign) {
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan = fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

// Per-axis phase e^{sign * i (k - N/2) dp c}, c = x0 + (1/2 - N/2) dx.
std::vector<Complex> axis_phase(const GridSpec& spec, int axis, int sign) {
  const double c = spec.x0[axis] + (0.5 - spec.n / 2.0) * spec.dx();
  std::vector<Complex> out(spec.n);
  for (int k = 0; k < spec.n; ++k) {
    out[k] = std::exp(Complex(0.0, sign * (k - spec.n / 2) * spec.dp() * c));
  }
  return out;
}

template <typename Fn>
void for_sites(int n, Fn&& fn) {
  std::size_t site = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) fn(ix, iy, iz, site++);
}

}  // namespace

double GridSpec::dx() const { return std::numbers::pi / pmax; }

void GridSpec::validate() const {
  if (n < 8 || n % 2 != 0) throw std::domain_error("GridSpec: even n >= 8 required");
  if (pmax <= 0.0) throw std::domain_error("GridSpec: pmax > 0 required");
}

Vec3 GridField::p_at(int ix, int iy, int iz) const {
  const double dp = spec.dp();
  return {(ix - spec.n / 2) * dp, (iy - spec.n / 2) * dp, (iz - spec.n / 2) * dp};
}

Vec3 GridField::x_at(int ix, int iy, int iz) const {
  const double dx = spec.dx();
  const double off = 0.5 - spec.n / 2.0;
  return spec.x0 + dx * Vec3(ix + off, iy + off, iz + off);
}

double GridField::norm2() const {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const Complex& v : comp[c]) acc += std::norm(v);
  return acc * spec.dp() * spec.dp() * spec.dp();
}

GridField sample_momentum(const GridSpec& spec,
                          const std::function<CVec3(const Vec3&)>& f) {
  spec.validate();
  GridField out;
  out.spec = spec;
  const std::size_t total = static_cast<std::size_t>(spec.n) * spec.n * spec.n;
  for (int c = 0; c < 3; ++c) out.comp[c].resize(total);
  for_sites(spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    out.set(site, f(out.p_at(ix, iy, iz)));
  });
  return out;
}

PositionSamples to_position(const GridField& field) {
  const GridSpec& spec = field.spec;
  const int n = spec.n;
  const double scale =
      std::pow(spec.dp(), 3) / std::pow(2.0 * std::numbers::pi, 1.5);
  std::array<std::vector<Complex>, 3> phases = {
      axis_phase(spec, 0, +1), axis_phase(spec, 1, +1), axis_phase(spec, 2, +1)};
  PositionSamples out;
  for (int c = 0; c < 3; ++c) {
    out[c] = field.comp[c];
    for_sites(n, [&](int ix, int iy, int iz, std::size_t site) {
      out[c][site] *= phases[0][ix] * phases[1][iy] * phases[2][iz];
    });
    fft3(out[c], n, FFTW_BACKWARD);
    for_sites(n, [&](int ix, int iy, int iz, std::size_t site) {
      const double sgn = ((ix + iy + iz) % 2 == 0) ? 1.0 : -1.0;
      out[c][site] *= sgn * scale;
    });
  }
  return out;
}

GridField from_position(const GridSpec& spec, const PositionSamples& pos) {
  spec.validate();
  const int n = spec.n;
  const double scale =
      std::pow(spec.dx(), 3) / std::pow(2.0 * std::numbers::pi, 1.5);
  std::array<std::vector<Complex>, 3> phases = {
      axis_phase(spec, 0, -1), axis_phase(spec, 1, -1), axis_phase(spec, 2, -1)};
  GridField out;
  out.spec = spec;
  for (int c = 0; c < 3; ++c) {
    out.comp[c] = pos[c];
    for_sites(n, [&](int ix, int iy, int iz, std::size_t site) {
      const double sgn = ((ix + iy + iz) % 2 == 0) ? 1.0 : -1.0;
      out.comp[c][site] *= sgn;
    });
    fft3(out.comp[c], n, FFTW_FORWARD);
    for_sites(n, [&](int ix, int iy, int iz, std::size_t site) {
      out.comp[c][site] *= phases[0][ix] * phases[1][iy] * phases[2][iz] * scale;
    });
  }
  return out;
}

GridField sample_position(const GridSpec& spec,
                          const std::function<CVec3(const Vec3&)>& f) {
  spec.validate();
  GridField tmp;
  tmp.spec = spec;
  const std::size_t total = static_cast<std::size_t>(spec.n) * spec.n * spec.n;
  PositionSamples pos;
  for (int c = 0; c < 3; ++c) pos[c].resize(total);
  for_sites(spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    const CVec3 v = f(tmp.x_at(ix, iy, iz));
    for (int c = 0; c < 3; ++c) pos[c][site] = v[c];
  });
  return from_position(spec, pos);
}

double position_norm2(const GridSpec& spec, const PositionSamples& pos) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const Complex& v : pos[c]) acc += std::norm(v);
  return acc * std::pow(spec.dx(), 3);
}

namespace {

// The direction is undefined at the exact origin sample; at_origin picks the
// convention there. Longitudinal gets the identity so that the transverse and
// longitudinal parts still resolve the identity on the whole grid.
GridField pointwise_matrix(const GridField& field,
                           const std::function<CMat3(const Vec3&)>& m,
                           const CMat3& at_origin = CMat3::Zero()) {
  GridField out;
  out.spec = field.spec;
  for (int c = 0; c < 3; ++c) out.comp[c].resize(field.sites());
  for_sites(field.spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    const Vec3 p = field.p_at(ix, iy, iz);
    if (p.squaredNorm() == 0.0) {
      out.set(site, at_origin * field.value(site));
    } else {
      out.set(site, m(p) * field.value(site));
    }
  });
  return out;
}

}  // namespace

GridField project_transverse(const GridField& field) {
  return pointwise_matrix(field, [](const Vec3& p) {
    const Vec3 pi = p / p.norm();
    return CMat3((Mat3::Identity() - outer(pi, pi)).cast<Complex>());
  });
}

GridField project_longitudinal(const GridField& field) {
  return pointwise_matrix(
      field,
      [](const Vec3& p) {
        const Vec3 pi = p / p.norm();
        return CMat3(outer(pi, pi).cast<Complex>());
      },
      CMat3(CMat3::Identity()));
}

GridField project_helicity(const GridField& field, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("project_helicity: sign must be +-1");
  }
  return pointwise_matrix(field, [sign](const Vec3& p) {
    const CMat3 lam = kI * sigma_matrix(p / p.norm()).cast<Complex>();
    return CMat3(0.5 * (lam * lam + static_cast<double>(sign) * lam));
  });
}

double transversality_residual(const GridField& field) {
  // longitudinal energy fraction: sqrt(sum |pi.f|^2 / sum |f|^2)
  double num = 0.0, den = 0.0;
  for_sites(field.spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    const Vec3 p = field.p_at(ix, iy, iz);
    const CVec3 v = field.value(site);
    den += v.squaredNorm();
    const double r2 = p.squaredNorm();
    if (r2 > 0.0) num += std::norm(p.cast<Complex>().dot(v)) / r2;
  });
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

RegionSpec RegionSpec::all() {
  return {[](const Vec3&) { return true; }, "all"};
}

RegionSpec RegionSpec::box(const Vec3& lo, const Vec3& hi) {
  return {[lo, hi](const Vec3& x) {
            return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
          },
          "box"};
}

RegionSpec RegionSpec::cylinder_shell(double r1, double r2, double z1, double z2) {
  return {[=](const Vec3& x) {
            const double r = std::hypot(x.x(), x.y());
            return r >= r1 && r <= r2 && x.z() >= z1 && x.z() <= z2;
          },
          "cylinder-shell"};
}

namespace {

double region_weight(const GridField& part, const RegionSpec& region) {
  const PositionSamples pos = to_position(part);
  double acc = 0.0;
  for_sites(part.spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    if (!region.contains(part.x_at(ix, iy, iz))) return;
    for (int c = 0; c < 3; ++c) acc += std::norm(pos[c][site]);
  });
  return acc * std::pow(part.spec.dx(), 3);
}

double weighted_radius2(const GridField& part,
                        const std::function<double(double)>& phi) {
  const PositionSamples pos = to_position(part);
  double acc = 0.0;
  for_sites(part.spec.n, [&](int ix, int iy, int iz, std::size_t site) {
    const Vec3 x = part.x_at(ix, iy, iz);
    double a = 0.0;
    for (int c = 0; c < 3; ++c) a += std::norm(pos[c][site]);
    acc += a * phi(x.x() * x.x() + x.y() * x.y());
  });
  return acc * std::pow(part.spec.dx(), 3);
}

}  // namespace

double pov_expectation(const GridField& field, const RegionSpec& region) {
  const double n2 = field.norm2();
  if (n2 <= 0.0) throw std::domain_error("pov_expectation: zero field");
  // <f, P E P f> = ||chi (P f)||^2 since P is a pointwise projector.
  const double w = region_weight(project_transverse(field), region) +
                   region_weight(project_longitudinal(field), region);
  return w / n2;
}

double q_phi_expectation(const GridField& field,
                         const std::function<double(double)>& phi) {
  const double n2 = field.norm2();
  if (n2 <= 0.0) throw std::domain_error("q_phi_expectation: zero field");
  const double w = weighted_radius2(project_transverse(field), phi) +
                   weighted_radius2(project_longitudinal(field), phi);
  return w / n2;
}

GridField washer_grid(const WasherState& w, GridSpec spec) {
  w.validate();
  spec.x0 = Vec3(0.0, 0.0, 0.5 * (w.z1 + w.z2));  // grid centered on the washer
  spec.validate();
  const double dx = spec.dx();
  const double need = 8.0 * dx;
  if (w.r2 - w.r1 < need || w.z2 - w.z1 < need) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "washer_grid: under-resolved support; need cell size <= %g "
                  "(got %g); raise n or lower pmax",
                  std::min(w.r2 - w.r1, w.z2 - w.z1) / 8.0, dx);
    throw std::domain_error(msg);
  }
  const double half = 0.5 * spec.n * dx;
  if (w.r2 >= half || 0.5 * (w.z2 - w.z1) >= half) {
    throw std::domain_error("washer_grid: support exceeds the position window");
  }
  // The sharp characteristic functions are tapered over ~2 cells with an
  // energy-exact C^2 ramp (quintic smoothstep in |amplitude|^2, which is
  // symmetric about the boundary, so the continuum L2 norm is unchanged).
  // Plain cell-centered sampling of the jumps would alias the slow spectral
  // tails back into the box and spoil both the norm and transversality.
  const double taper = 4.0 * dx;
  auto edge = [taper](double t) {  // |amplitude| ramp across a boundary
    const double u = t / taper + 0.5;
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double s5 = ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
    // sin(pi/2 s5): C^2 amplitude with sin^2 + cos^2 symmetry about the
    // boundary, so the squared ramp still integrates to exactly half.
    return std::sin(0.5 * std::numbers::pi_v<double> * s5);
  };
  return sample_position(spec, [&w, edge](const Vec3& x) -> CVec3 {
    const double r = std::hypot(x.x(), x.y());
    const double amp = edge(r - w.r1) * edge(w.r2 - r) * edge(x.z() - w.z1) *
                       edge(w.z2 - x.z());
    if (amp == 0.0 || r == 0.0) return CVec3::Zero();
    const double scale = amp / (2.0 * std::numbers::pi_v<double> * r * r);
    return CVec3(-x.y() * scale, x.x() * scale, 0.0);
  });
}

void save_grid_field(const GridField& field, const std::string& path) {
  nlohmann::json header = {
      {"n", field.spec.n},
      {"pmax", field.spec.pmax},
      {"x0", {field.spec.x0.x(), field.spec.x0.y(), field.spec.x0.z()}},
      {"ordering", "row-major"},
      {"axes", "x,y,z"},
      {"space", "momentum"},
      {"format", "complex-f64-le, components interleaved per site"},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_grid_field: cannot open " + path);
  out << header.dump() << "\n";
  const std::size_t total = field.sites();
  for (std::size_t site = 0; site < total; ++site) {
    for (int c = 0; c < 3; ++c) {
      const double re = field.comp[c][site].real();
      const double im = field.comp[c][site].imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(double));
      out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
}

GridField load_grid_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_grid_field: cannot open " + path);
  std::string line;
  std::getline(in, line);
  const nlohmann::json header = nlohmann::json::parse(line);
  GridField out;
  out.spec.n = header.at("n").get<int>();
  out.spec.pmax = header.at("pmax").get<double>();
  const auto& x0 = header.at("x0");
  out.spec.x0 = Vec3(x0[0].get<double>(), x0[1].get<double>(), x0[2].get<double>());
  out.spec.validate();
  const std::size_t total =
      static_cast<std::size_t>(out.spec.n) * out.spec.n * out.spec.n;
  for (int c = 0; c < 3; ++c) out.comp[c].resize(total);
  for (std::size_t site = 0; site < total; ++site) {
    for (int c = 0; c < 3; ++c) {
      double re, im;
      in.read(reinterpret_cast<char*>(&re), sizeof(double));
      in.read(reinterpret_cast<char*>(&im), sizeof(double));
      out.comp[c][site] = Complex(re, im);
    }
  }
  if (!in) throw std::runtime_error("load_grid_field: truncated file " + path);
  return out;
}

}  // namespace lightcone
