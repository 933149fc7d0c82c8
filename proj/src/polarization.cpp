#include "lightcone/polarization.hpp"

#include <cmath>
#include <stdexcept>

namespace lightcone {

namespace {

// A singular ray is one-sided: the antipodal direction is regular.
void check_off_ray(const Vec3& pi, const Vec3& ray, double guard,
                   const char* what) {
  if (pi.dot(ray) > 0.0 && pi.cross(ray).norm() < guard) {
    throw std::domain_error(std::string(what) + ": momentum inside angular guard of singular ray");
  }
}

Vec3 unit_momentum(const Vec3& p, const char* what) {
  const double n = p.norm();
  if (n == 0.0) throw std::domain_error(std::string(what) + ": p = 0 excluded");
  return p / n;
}

// dpi_a / dp_j = (delta_aj - pi_a pi_j) / |p|
Mat3 dpi_dp(const Vec3& p) {
  const Vec3 pi = p / p.norm();
  return (Mat3::Identity() - outer(pi, pi)) / p.norm();
}

// Standard frame vectors and their derivatives with respect to pi,
// with pi treated as three free variables (the chain rule through
// dpi/dp projects out the radial direction anyway).
Vec3 frame_e1(const Vec3& n) {
  const double t = 1.0 / (1.0 - n.z());
  return {1.0 - t * n.x() * n.x(), -t * n.x() * n.y(), n.x()};
}

Vec3 frame_e2(const Vec3& n) {
  const double t = 1.0 / (1.0 - n.z());
  return {t * n.x() * n.y(), -1.0 + t * n.y() * n.y(), -n.y()};
}

Mat3 frame_e1_dpi(const Vec3& n) {
  const double t = 1.0 / (1.0 - n.z());
  Mat3 d;  // d(i, a) = d e1^i / d n_a
  d.col(0) = Vec3(-2.0 * t * n.x(), -t * n.y(), 1.0);
  d.col(1) = Vec3(0.0, -t * n.x(), 0.0);
  d.col(2) = Vec3(-t * t * n.x() * n.x(), -t * t * n.x() * n.y(), 0.0);
  return d;
}

Mat3 frame_e2_dpi(const Vec3& n) {
  const double t = 1.0 / (1.0 - n.z());
  Mat3 d;
  d.col(0) = Vec3(t * n.y(), 0.0, 0.0);
  d.col(1) = Vec3(t * n.x(), 2.0 * t * n.y(), -1.0);
  d.col(2) = Vec3(t * t * n.x() * n.y(), t * t * n.y() * n.y(), 0.0);
  return d;
}

}  // namespace

FrameTriple hertz_basis(const Vec3& a, double angle_guard) {
  if (std::abs(a.norm() - 1.0) > 1e-9) {
    throw std::domain_error("hertz_basis: a must be a unit vector");
  }
  FrameTriple out;
  out.singular_rays = {a, Vec3(-a)};
  out.e1.label = "hertz-e1";
  out.e1.eval = [a, angle_guard](const Vec3& p) {
    const Vec3 pi = unit_momentum(p, "hertz_basis");
    check_off_ray(pi, a, angle_guard, "hertz_basis");
    check_off_ray(pi, Vec3(-a), angle_guard, "hertz_basis");
    const Vec3 c = p.cross(a);
    return CVec3((c / c.norm()).cast<Complex>());
  };
  out.e2.label = "hertz-e2";
  out.e2.eval = [a, angle_guard](const Vec3& p) {
    const Vec3 pi = unit_momentum(p, "hertz_basis");
    check_off_ray(pi, a, angle_guard, "hertz_basis");
    check_off_ray(pi, Vec3(-a), angle_guard, "hertz_basis");
    const Vec3 c = p.cross(p.cross(a));
    return CVec3((c / c.norm()).cast<Complex>());
  };
  out.e3.label = "hertz-e3";
  out.e3.eval = [](const Vec3& p) {
    return CVec3(unit_momentum(p, "hertz_basis").cast<Complex>());
  };
  return out;
}

std::pair<Section, Section> boosted_basis_limit(const Vec3& w, const Vec3& a,
                                                int sign, double angle_guard) {
  if (std::abs(w.norm() - 1.0) > 1e-9 || std::abs(a.norm() - 1.0) > 1e-9) {
    throw std::domain_error("boosted_basis_limit: w and a must be unit vectors");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("boosted_basis_limit: sign must be +1 or -1");
  }
  const double wa = w.dot(a);
  if (1.0 - wa * wa < 1e-16) {
    throw std::domain_error("boosted_basis_limit: w parallel to a");
  }
  const double norm = std::sqrt(1.0 - wa * wa);
  const double sgn = static_cast<double>(sign);
  const Vec3 wxa = w.cross(a);
  const Vec3 wxwxa = w.cross(wxa);
  // The limit frames become singular on the ray pi = -sign * w where the
  // denominator 1 + sign*pi.w vanishes.
  const Vec3 bad_ray = -sgn * w;

  Section s1;
  s1.label = "limit-e1";
  s1.eval = [=](const Vec3& p) {
    const Vec3 pi = unit_momentum(p, "boosted_basis_limit");
    check_off_ray(pi, bad_ray, angle_guard, "boosted_basis_limit");
    const double denom = 1.0 + sgn * pi.dot(w);
    const Vec3 v = (sgn / norm) * (wxa - (pi.dot(wxa) / denom) * (pi + sgn * w));
    return CVec3(v.cast<Complex>());
  };
  Section s2;
  s2.label = "limit-e2";
  s2.eval = [=](const Vec3& p) {
    const Vec3 pi = unit_momentum(p, "boosted_basis_limit");
    check_off_ray(pi, bad_ray, angle_guard, "boosted_basis_limit");
    const double denom = 1.0 + sgn * pi.dot(w);
    const Vec3 v = (1.0 / norm) * (wxwxa - (pi.dot(wxwxa) / denom) * (pi + sgn * w));
    return CVec3(v.cast<Complex>());
  };
  return {s1, s2};
}

FrameTriple standard_frame(double angle_guard) {
  FrameTriple out;
  out.singular_rays = {Vec3(0, 0, 1)};
  const Vec3 zray(0, 0, 1);

  auto make = [&](const char* label, Vec3 (*val)(const Vec3&),
                  Mat3 (*dval)(const Vec3&)) {
    Section s;
    s.label = label;
    s.eval = [val, zray, angle_guard](const Vec3& p) {
      const Vec3 pi = unit_momentum(p, "standard_frame");
      check_off_ray(pi, zray, angle_guard, "standard_frame");
      return CVec3(val(pi).cast<Complex>());
    };
    s.jacobian = [dval, zray, angle_guard](const Vec3& p) {
      const Vec3 pi = unit_momentum(p, "standard_frame");
      check_off_ray(pi, zray, angle_guard, "standard_frame");
      return CMat3((dval(pi) * dpi_dp(p)).cast<Complex>());
    };
    return s;
  };

  out.e1 = make("frame-e1", &frame_e1, &frame_e1_dpi);
  out.e2 = make("frame-e2", &frame_e2, &frame_e2_dpi);

  out.e3.label = "frame-e3";
  out.e3.eval = [](const Vec3& p) {
    return CVec3(unit_momentum(p, "standard_frame").cast<Complex>());
  };
  out.e3.jacobian = [](const Vec3& p) {
    unit_momentum(p, "standard_frame");
    return CMat3(dpi_dp(p).cast<Complex>());
  };
  return out;
}

std::pair<Section, Section> complex_frame(double angle_guard) {
  const FrameTriple f = standard_frame(angle_guard);
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  Section plus = Complex(r) * (f.e2 + i * f.e1);
  plus.label = "frame-e+";
  Section minus = Complex(r) * (f.e2 - i * f.e1);
  minus.label = "frame-e-";
  return {plus, minus};
}

}  // namespace lightcone
