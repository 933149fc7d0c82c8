#include "lightcone/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "lightcone/localization.hpp"
#include "lightcone/polarization.hpp"
#include "lightcone/representation.hpp"

namespace lightcone {

namespace {

// f(p) = poly(p) exp(-|p - a|^2 / (2 sigma^2)) v, with the exact first and
// second derivatives of the scalar factor. poly_deg: 0 -> 1, 1 -> p1 p2.
Section gaussian_section(const std::string& label, const Vec3& a, double sigma,
                         const CVec3& v, int poly_deg) {
  const double inv_s2 = 1.0 / (sigma * sigma);
  auto scalar = [a, inv_s2, poly_deg](const Vec3& p, double& g, Vec3& dg, Mat3& ddg) {
    const Vec3 u = p - a;
    const double env = std::exp(-0.5 * inv_s2 * u.squaredNorm());
    double poly = 1.0;
    Vec3 dpoly = Vec3::Zero();
    Mat3 ddpoly = Mat3::Zero();
    if (poly_deg == 1) {
      poly = p.x() * p.y();
      dpoly = Vec3(p.y(), p.x(), 0.0);
      ddpoly(0, 1) = ddpoly(1, 0) = 1.0;
    }
    g = poly * env;
    dg = (dpoly - poly * inv_s2 * u) * env;
    ddg = env * (ddpoly - inv_s2 * (dpoly * u.transpose() + u * dpoly.transpose()) -
                 poly * inv_s2 * (Mat3::Identity() - inv_s2 * u * u.transpose()));
  };
  Section out;
  out.label = label;
  out.eval = [scalar, v](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    scalar(p, g, dg, ddg);
    return CVec3(g * v);
  };
  out.jacobian = [scalar, v](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    scalar(p, g, dg, ddg);
    return CMat3(v * dg.transpose().cast<Complex>());
  };
  out.hessian = [scalar, v](const Vec3& p) {
    double g;
    Vec3 dg;
    Mat3 ddg;
    scalar(p, g, dg, ddg);
    std::array<CMat3, 3> h;
    for (int i = 0; i < 3; ++i) h[i] = v[i] * ddg.cast<Complex>();
    return h;
  };
  return out;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::vector<std::string> catalog_names() {
  return {"gauss-x", "gauss-y", "gauss-circ", "poly-gauss", "gauss-wide"};
}

Section catalog_section(const std::string& name) {
  if (name == "gauss-x") {
    return gaussian_section(name, {0.3, -0.2, 0.4}, 1.0, {1.0, 0.0, 0.0}, 0);
  }
  if (name == "gauss-y") {
    return gaussian_section(name, {-0.6, 0.5, -0.3}, 1.2, {0.0, 1.0, 0.0}, 0);
  }
  if (name == "gauss-circ") {
    return gaussian_section(name, {-0.5, 0.7, 0.2}, 0.8,
                            {Complex(kInvSqrt2, 0.0), Complex(0.0, kInvSqrt2), 0.0},
                            0);
  }
  if (name == "poly-gauss") {
    return gaussian_section(name, {0.2, 0.1, -0.5}, 1.0, {0.0, 0.0, 1.0}, 1);
  }
  if (name == "gauss-wide") {
    return gaussian_section(name, {0.8, 0.1, -0.6}, 2.0,
                            {0.0, Complex(kInvSqrt2, 0.0), Complex(0.0, kInvSqrt2)},
                            0);
  }
  if (name.rfind("circle:", 0) == 0) {
    return circle_state(std::stod(name.substr(7)));
  }
  if (name.rfind("eigenmode:", 0) == 0) {
    const auto rest = name.substr(10);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("catalog_section: eigenmode:<alpha>:<lambda>");
    }
    return boost_eigenmode(std::stoi(rest.substr(0, colon)),
                           std::stod(rest.substr(colon + 1)));
  }
  if (name.rfind("frame:", 0) == 0) {
    const FrameTriple frame = standard_frame();
    const auto which = name.substr(6);
    if (which == "e1") return frame.e1;
    if (which == "e2") return frame.e2;
    if (which == "e3") return frame.e3;
  }
  throw std::invalid_argument("catalog_section: unknown section '" + name + "'");
}

}  // namespace lightcone
