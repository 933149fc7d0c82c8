#include "lightcone/suites.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lightcone/catalog.hpp"
#include "lightcone/cocycle.hpp"
#include "lightcone/connections.hpp"
#include "lightcone/grid_field.hpp"
#include "lightcone/localization.hpp"
#include "lightcone/polarization.hpp"
#include "lightcone/representation.hpp"

namespace lightcone {

namespace {

constexpr Complex kI{0.0, 1.0};

double eps(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uni(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }
  Vec3 unit() {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v(g(rng), g(rng), g(rng));
    while (v.norm() < 1e-6) v = Vec3(g(rng), g(rng), g(rng));
    return v.normalized();
  }
  // Momentum sample away from the origin and from the +z singular ray.
  Vec3 shell_point() {
    for (;;) {
      Vec3 p(uni(-1.5, 1.5), uni(-1.5, 1.5), uni(-1.5, 1.5));
      const double r = p.norm();
      if (r < 0.4 || r > 2.5) continue;
      if (p.z() / r > 0.9) continue;
      return p;
    }
  }
  LorentzMatrix random_lorentz(double max_rapidity = 3.0) {
    const LorentzMatrix r1 = rotation_matrix(unit(), uni(0.0, 6.28));
    const LorentzMatrix b = boost_matrix({unit(), uni(-max_rapidity, max_rapidity)});
    const LorentzMatrix r2 = rotation_matrix(unit(), uni(0.0, 6.28));
    return r1 * b * r2;
  }
  std::vector<Vec3> shell_points(int n) {
    std::vector<Vec3> out(n);
    for (auto& p : out) p = shell_point();
    return out;
  }
};

double sup_diff(const Section& a, const Section& b, const std::vector<Vec3>& pts) {
  double m = 0.0;
  for (const Vec3& p : pts) {
    m = std::max(m, (a.eval(p) - b.eval(p)).cwiseAbs().maxCoeff());
  }
  return m;
}

double sup_norm(const Section& a, const std::vector<Vec3>& pts) {
  double m = 0.0;
  for (const Vec3& p : pts) m = std::max(m, a.eval(p).cwiseAbs().maxCoeff());
  return m;
}

Section zero_section() {
  Section z;
  z.label = "0";
  z.eval = [](const Vec3&) { return CVec3(CVec3::Zero()); };
  z.jacobian = [](const Vec3&) { return CMat3(CMat3::Zero()); };
  z.hessian = [](const Vec3&) {
    return std::array<CMat3, 3>{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};
  };
  return z;
}

// (s f)(p) with s(p) = 1/|p|, keeping an analytic jacobian.
Section over_p_norm(const Section& f) {
  Section out;
  out.label = "(1/|p|)" + f.label;
  out.eval = [e = f.eval](const Vec3& p) { return CVec3(e(p) / p.norm()); };
  if (f.has_jacobian()) {
    out.jacobian = [e = f.eval, j = f.jacobian](const Vec3& p) {
      const double r = p.norm();
      const CVec3 grad_s = (-(p / (r * r * r))).cast<Complex>();
      return CMat3(j(p) / r + e(p) * grad_s.transpose());
    };
  }
  return out;
}

using CheckFn = std::function<double()>;

struct CheckSpec {
  std::string name;
  double tol;
  CheckFn fn;
};

void run_checks(SuiteReport& report, const std::vector<CheckSpec>& specs,
                const std::map<std::string, double>& overrides) {
  for (const auto& spec : specs) {
    CheckResult r;
    r.name = spec.name;
    r.tolerance = spec.tol;
    if (auto it = overrides.find(spec.name); it != overrides.end()) {
      r.tolerance = it->second;
    }
    const auto t0 = std::chrono::steady_clock::now();
    r.residual = spec.fn();
    const auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.passed = r.residual <= r.tolerance;
    report.checks.push_back(std::move(r));
  }
}

// ---------------------------------------------------------------- cocycle

std::vector<CheckSpec> cocycle_checks(std::uint64_t seed) {
  auto cocycle_of = [](const LorentzMatrix& L, const Vec3& p, double m) {
    return (m > 0.0) ? dm(L, ShellPoint::make(p, m)).d : d0(L, p).d;
  };
  std::vector<CheckSpec> out;
  out.push_back({"cocycle-identity", 1e-9, [seed, cocycle_of] {
    Sampler s(seed);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      const LorentzMatrix L1 = s.random_lorentz();
      const LorentzMatrix L2 = s.random_lorentz();
      const Vec3 p = s.shell_point();
      for (double m : {0.0, 0.3, 1.0}) {
        const Vec3 q = act_on_cone(L2, p, m);
        const Mat3 lhs = cocycle_of(L1 * L2, p, m);
        const Mat3 rhs = cocycle_of(L1, q, m) * cocycle_of(L2, p, m);
        worst = std::max(worst, (lhs - rhs).norm());
      }
    }
    return worst;
  }});
  out.push_back({"d0-orthogonal", 1e-10, [seed] {
    Sampler s(seed + 1);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      const Mat3 d = d0(s.random_lorentz(), s.shell_point()).d;
      worst = std::max(worst, (d.transpose() * d - Mat3::Identity()).norm());
    }
    return worst;
  }});
  out.push_back({"dm-orthogonal", 1e-10, [seed] {
    Sampler s(seed + 2);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      const Mat3 d = dm(s.random_lorentz(), ShellPoint::make(s.shell_point(), 0.7)).d;
      worst = std::max(worst, (d.transpose() * d - Mat3::Identity()).norm());
    }
    return worst;
  }});
  out.push_back({"d0-spot-value", 1e-12, [] {
    const Mat3 d = d0(boost_matrix({Vec3(0, 0, 1), std::log(2.0)}), Vec3(1, 0, 0)).d;
    Mat3 expected;
    expected << 0.8, 0, 0.6, 0, 1, 0, -0.6, 0, 0.8;
    return (d - expected).norm();
  }});
  out.push_back({"dtilde-isometry", 1e-10, [seed] {
    Sampler s(seed + 3);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto pt = ShellPoint::make(s.shell_point(), 0.7);
      const LorentzMatrix L = s.random_lorentz();
      const auto c = dtilde(L, pt);
      const Mat3 lhs = c.d.transpose() * metric_g(c.target).g * c.d;
      worst = std::max(worst, (lhs - metric_g(pt).g).norm());
    }
    return worst;
  }});
  out.push_back({"massless-limit-rate", 0.2, [seed] {
    Sampler s(seed + 4);
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
      const LorentzMatrix L = s.random_lorentz(1.5);
      const Vec3 p = s.shell_point();
      const Mat3 base = d0(L, p).d;
      double prev = -1.0;
      for (double m : {1e-2, 5e-3, 2.5e-3}) {
        const double gap = (dm(L, ShellPoint::make(p, m)).d - base).norm();
        if (prev > 0.0) worst = std::max(worst, std::abs(prev / gap - 2.0));
        prev = gap;
      }
    }
    return worst;
  }});
  out.push_back({"boost-limit-rate", 0.15, [seed] {
    Sampler s(seed + 5);
    const double e2 = std::exp(2.0);
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
      const Vec3 w = s.unit();
      Vec3 p = s.shell_point();
      while (std::abs(p.normalized().dot(w)) > 0.9) p = s.shell_point();
      for (int sign : {+1, -1}) {
        const Mat3 lim = d0_prime_limit(w, sign, p).d;
        std::array<double, 3> gap{};
        int idx = 0;
        for (double rap : {4.0, 5.0, 6.0}) {
          gap[idx++] = (d0_prime({w, sign * rap}, p).d - lim).norm();
        }
        if (!(gap[0] > gap[1] && gap[1] > gap[2])) return 1.0;
        // the gap decays like e^{-s}, so two units of rapidity shrink it e^2
        worst = std::max(worst, std::abs(gap[0] / gap[2] / e2 - 1.0));
      }
    }
    return worst;
  }});
  out.push_back({"boost-limit-orthogonal", 1e-12, [seed] {
    Sampler s(seed + 6);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const Vec3 w = s.unit();
      Vec3 p = s.shell_point();
      while (std::abs(p.normalized().dot(w)) > 0.95) p = s.shell_point();
      for (int sign : {+1, -1}) {
        const Mat3 d = d0_prime_limit(w, sign, p).d;
        worst = std::max(worst, (d.transpose() * d - Mat3::Identity()).norm());
      }
    }
    return worst;
  }});
  return out;
}

// -------------------------------------------------------------- generators

struct Identity21 {
  GeneratorName a;
  int i;
  GeneratorName b;
  int j;
  // rhs = sum of coeff * generator terms applied to f
  std::function<Section(const Section&)> rhs;
};

std::vector<Identity21> poincare_identities() {
  const auto M = GeneratorName::M;
  const auto N = GeneratorName::N;
  const auto P = GeneratorName::P;
  const auto P0 = GeneratorName::P0;
  std::vector<Identity21> ids;
  auto gen = [](GeneratorName g, int c, Complex coeff) {
    return [g, c, coeff](const Section& f) {
      return coeff * generator_apply(g, c, f);
    };
  };
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const int k = 6 - i - j;
      const double e = eps(i, j, k);
      ids.push_back({M, i, M, j, gen(M, k, kI * e)});
      ids.push_back({N, i, N, j, gen(M, k, -kI * e)});
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) {
        ids.push_back({M, i, N, j, [](const Section&) { return zero_section(); }});
      } else {
        const int k = 6 - i - j;
        ids.push_back({M, i, N, j, gen(N, k, kI * eps(i, j, k))});
      }
    }
  for (int i = 1; i <= 3; ++i) {
    ids.push_back({M, i, P0, 0, [](const Section&) { return zero_section(); }});
    ids.push_back({N, i, P0, 0, gen(P, i, kI)});
  }
  return ids;
}

std::vector<CheckSpec> generator_checks(std::uint64_t seed) {
  std::vector<CheckSpec> out;
  out.push_back({"lie-algebra-analytic", 1e-8, [seed] {
    Sampler s(seed + 10);
    const auto pts = s.shell_points(6);
    double worst = 0.0;
    for (const auto& name : catalog_names()) {
      const Section f = catalog_section(name);
      for (const auto& id : poincare_identities()) {
        const Section lhs =
            generator_apply(id.a, id.i, generator_apply(id.b, id.j, f)) -
            generator_apply(id.b, id.j, generator_apply(id.a, id.i, f));
        worst = std::max(worst, sup_diff(lhs, id.rhs(f), pts));
      }
    }
    return worst;
  }});
  out.push_back({"lie-algebra-fd", 1e-5, [seed] {
    Sampler s(seed + 11);
    const auto pts = s.shell_points(3);
    double worst = 0.0;
    const double h = 0.01;
    for (const auto& name : {"gauss-x", "gauss-circ"}) {
      const Section f = catalog_section(name);
      for (const auto& id : poincare_identities()) {
        const Section lhs =
            generator_fd(id.a, id.i, generator_fd(id.b, id.j, f, h), h) -
            generator_fd(id.b, id.j, generator_fd(id.a, id.i, f, h), h);
        worst = std::max(worst, sup_diff(lhs, id.rhs(f), pts));
      }
    }
    return worst;
  }});
  out.push_back({"fd-step-convergence", 1e-12, [seed] {
    Sampler s(seed + 12);
    const auto pts = s.shell_points(3);
    const Section f = catalog_section("gauss-x");
    const Section exact = generator_apply(GeneratorName::N, 2, f);
    double worst_short = 0.0;
    const double e1 = sup_diff(generator_fd(GeneratorName::N, 2, f, 0.16), exact, pts);
    const double e2 = sup_diff(generator_fd(GeneratorName::N, 2, f, 0.08), exact, pts);
    const double ratio = e1 / std::max(e2, 1e-300);
    // at least second order: halving the step should shrink the error 4x
    worst_short = std::max(0.0, 3.5 - ratio);
    return worst_short;
  }});
  out.push_back({"frame-orthonormal", 1e-12, [seed] {
    Sampler s(seed + 13);
    const FrameTriple fr = standard_frame();
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(100)) {
      Mat3 e;
      e.col(0) = fr.e1.eval(p).real();
      e.col(1) = fr.e2.eval(p).real();
      e.col(2) = fr.e3.eval(p).real();
      worst = std::max(worst, (e.transpose() * e - Mat3::Identity()).norm());
    }
    return worst;
  }});
  out.push_back({"frame-ladder", 1e-8, [seed] {
    Sampler s(seed + 14);
    const auto pts = s.shell_points(20);
    const FrameTriple fr = standard_frame();
    double worst = 0.0;
    worst = std::max(worst, sup_diff(generator_apply(GeneratorName::M, 3, fr.e1),
                                     Complex(0, -1) * fr.e2, pts));
    worst = std::max(worst, sup_diff(generator_apply(GeneratorName::M, 3, fr.e2),
                                     Complex(0, 1) * fr.e1, pts));
    worst = std::max(worst,
                     sup_norm(generator_apply(GeneratorName::M, 3, fr.e3), pts));
    return worst;
  }});
  out.push_back({"frame-boost-annihilation", 1e-8, [seed] {
    Sampler s(seed + 15);
    const auto pts = s.shell_points(20);
    const FrameTriple fr = standard_frame();
    double worst = 0.0;
    for (const Section* e : {&fr.e1, &fr.e2, &fr.e3}) {
      worst = std::max(worst, sup_norm(generator_apply(GeneratorName::N, 3, *e), pts));
    }
    return worst;
  }});
  out.push_back({"eigenmode-n3", 1e-6, [seed] {
    Sampler s(seed + 16);
    const auto pts = s.shell_points(20);
    double worst = 0.0;
    for (double lambda : {-1.0, 0.5, 1.3}) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        const Section f = boost_eigenmode(alpha, lambda);
        worst = std::max(worst, sup_diff(generator_apply(GeneratorName::N, 3, f),
                                         Complex(lambda) * f, pts));
      }
    }
    return worst;
  }});
  out.push_back({"helicity-frame", 1e-10, [seed] {
    Sampler s(seed + 17);
    const auto pts = s.shell_points(20);
    const auto [ep, em] = complex_frame();
    const FrameTriple fr = standard_frame();
    double worst = 0.0;
    worst = std::max(worst, sup_diff(helicity_apply(ep), Complex(-1) * ep, pts));
    worst = std::max(worst, sup_diff(helicity_apply(em), Complex(+1) * em, pts));
    worst = std::max(worst, sup_norm(helicity_apply(fr.e3), pts));
    return worst;
  }});
  out.push_back({"pauli-lubanski-eigenstates", 1e-6, [seed] {
    Sampler s(seed + 18);
    const auto pts = s.shell_points(4);
    const auto [ep, em] = complex_frame();
    const FrameTriple fr = standard_frame();
    double worst = 0.0;
    // W^mu = lambda P^mu on helicity eigenstates
    const std::vector<std::pair<const Section*, double>> cases = {
        {&ep, -1.0}, {&em, +1.0}, {&fr.e3, 0.0}};
    for (const auto& [f, lambda] : cases) {
      const auto w = pauli_lubanski(*f);
      for (int mu = 0; mu <= 3; ++mu) {
        Section rhs;
        rhs.eval = [mu, lambda, e = f->eval](const Vec3& p) {
          const double factor = (mu == 0) ? p.norm() : p[mu - 1];
          return CVec3(lambda * factor * e(p));
        };
        worst = std::max(worst, sup_diff(w[mu], rhs, pts));
      }
    }
    return worst;
  }});
  out.push_back({"helicity-commutes", 1e-8, [seed] {
    Sampler s(seed + 19);
    const auto pts = s.shell_points(4);
    double worst = 0.0;
    for (const auto& name : {"gauss-circ", "poly-gauss"}) {
      const Section f = catalog_section(name);
      auto comm = [&](GeneratorName g, int c) {
        return sup_norm(generator_apply(g, c, helicity_apply(f)) -
                            helicity_apply(generator_apply(g, c, f)),
                        pts);
      };
      worst = std::max(worst, comm(GeneratorName::P0, 0));
      for (int c = 1; c <= 3; ++c) {
        worst = std::max(worst, comm(GeneratorName::P, c));
        worst = std::max(worst, comm(GeneratorName::M, c));
        worst = std::max(worst, comm(GeneratorName::N, c));
      }
    }
    return worst;
  }});
  return out;
}

// ------------------------------------------------------------- connections

std::vector<CheckSpec> connection_checks(std::uint64_t seed) {
  std::vector<CheckSpec> out;
  auto chart_points = [](Sampler& s, int n) {
    std::vector<Vec3> pts(n);
    for (auto& c : pts) c = Vec3(s.uni(-2, 2), s.uni(-2, 2), s.uni(0.3, 3.0));
    return pts;
  };
  out.push_back({"teleparallel-parallel-frame", 1e-8, [seed, chart_points] {
    Sampler s(seed + 20);
    const auto tp = teleparallel_gamma();
    double worst = 0.0;
    for (const Vec3& c : chart_points(s, 100)) {
      const double x = c.x(), y = c.y(), w = c.z();
      const auto g = tp.gamma(c);
      // analytic chart derivatives of the pushed frame
      // e1 = (a/2w, 0, 0), e2 = (0, -a/2w, 0), e3 = (0, 0, 1), a = 1+x^2+y^2
      const double a = 1.0 + x * x + y * y;
      std::array<Vec3, 3> e = {Vec3(a / (2 * w), 0, 0), Vec3(0, -a / (2 * w), 0),
                               Vec3(0, 0, 1)};
      std::array<std::array<Vec3, 3>, 3> de;  // de[i][alpha] = d_i e_alpha
      for (auto& row : de)
        for (auto& v : row) v = Vec3::Zero();
      de[0][0] = Vec3(x / w, 0, 0);
      de[1][0] = Vec3(y / w, 0, 0);
      de[2][0] = Vec3(-a / (2 * w * w), 0, 0);
      de[0][1] = Vec3(0, -x / w, 0);
      de[1][1] = Vec3(0, -y / w, 0);
      de[2][1] = Vec3(0, a / (2 * w * w), 0);
      for (int i = 0; i < 3; ++i)
        for (int alpha = 0; alpha < 3; ++alpha) {
          worst = std::max(worst,
                           (de[i][alpha] + g[i] * e[alpha]).cwiseAbs().maxCoeff());
        }
    }
    return worst;
  }});
  out.push_back({"teleparallel-flat", 1e-7, [seed, chart_points] {
    Sampler s(seed + 21);
    const auto tp = teleparallel_gamma();
    double worst = 0.0;
    for (const Vec3& c : chart_points(s, 50)) {
      worst = std::max(worst, curvature(tp, c).max_abs());
    }
    return worst;
  }});
  out.push_back({"teleparallel-not-semi-symmetric", 1e-12, [seed, chart_points] {
    Sampler s(seed + 22);
    const auto tp = teleparallel_gamma();
    double worst = 0.0;
    for (const Vec3& c : chart_points(s, 20)) {
      const auto rep = semi_symmetry_test(tp, c);
      if (rep.verdict) return 1.0;  // must NOT be semi-symmetric
      // witness: the trace 1-form has |tau_2| = |y|/a
      const double a = 1.0 + c.x() * c.x() + c.y() * c.y();
      worst = std::max(worst, std::abs(std::abs(rep.tau[1]) - std::abs(c.y()) / a));
    }
    return worst;
  }});
  out.push_back({"pryce-curvature-closed-form", 1e-12, [seed] {
    Sampler s(seed + 23);
    const auto pr = pryce_gamma();
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(50)) {
      const auto R = curvature(pr, p);
      const Vec3 pi = p / p.norm();
      const Mat3 sig = sigma_matrix(pi);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Mat3 expected = (sig(i, j) / p.squaredNorm()) * sig;
          worst = std::max(worst, (R.r[i][j] - expected).norm());
        }
    }
    return worst;
  }});
  out.push_back({"pryce-curvature-fd", 1e-7, [seed] {
    Sampler s(seed + 24);
    auto pr = pryce_gamma();
    pr.analytic_derivs = nullptr;  // force the finite-difference path
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(10)) {
      const auto R = curvature(pr, p);
      const Vec3 pi = p / p.norm();
      const Mat3 sig = sigma_matrix(pi);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Mat3 expected = (sig(i, j) / p.squaredNorm()) * sig;
          worst = std::max(worst, (R.r[i][j] - expected).norm());
        }
    }
    return worst;
  }});
  out.push_back({"pryce-metric-semi-symmetric", 1e-12, [seed] {
    Sampler s(seed + 25);
    const auto pr = pryce_gamma();
    const MetricField euclid = [](const Vec3&) { return Mat3(Mat3::Identity()); };
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(20)) {
      const auto rep = semi_symmetry_test(pr, p, euclid, 1e-9);
      if (!rep.verdict) return 1.0;
      worst = std::max(worst, rep.residual);
      worst = std::max(worst, rep.metric_residual);
      const Vec3 expected_tau = -p / p.squaredNorm();
      worst = std::max(worst, (rep.tau - expected_tau).cwiseAbs().maxCoeff());
    }
    return worst;
  }});
  out.push_back({"difference-tensor", 1e-8, [seed] {
    Sampler s(seed + 26);
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(30)) {
      const auto diff = connection_difference(p);
      const Vec3 b = hb_shift_vector(p);
      const Mat3 sig = sigma_matrix(p / p.norm());
      for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, (diff[i] - b[i] * sig).norm());
      }
    }
    return worst;
  }});
  out.push_back({"chart-roundtrip", 1e-10, [seed] {
    Sampler s(seed + 27);
    double worst = 0.0;
    for (const Vec3& p : s.shell_points(100)) {
      const StereoPoint sp = to_stereo(p);
      worst = std::max(worst, (from_stereo(sp) - p).cwiseAbs().maxCoeff());
      // the pushed frame is orthonormal in the chart metric
      const auto e = pushforward_frame(sp);
      const Mat3 g = chart_metric(sp).g;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double expect = (a == b) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(e[a].dot(g * e[b]) - expect));
        }
    }
    return worst;
  }});
  return out;
}

// ------------------------------------------------------------ localization

std::vector<CheckSpec> localization_checks(std::uint64_t seed) {
  std::vector<CheckSpec> out;
  const std::vector<PositionKind> kinds = {PositionKind::Pryce,
                                           PositionKind::HawtonBaylis,
                                           PositionKind::Flat};
  out.push_back({"ccr", 1e-7, [seed, kinds] {
    Sampler s(seed + 30);
    const auto pts = s.shell_points(5);
    double worst = 0.0;
    for (const auto& name : {"gauss-x", "gauss-circ"}) {
      const Section f = catalog_section(name);
      for (PositionKind kind : kinds) {
        for (int j = 1; j <= 3; ++j)
          for (int k = 1; k <= 3; ++k) {
            const Section pf = generator_apply(GeneratorName::P, k, f);
            const Section lhs = position_apply(kind, j, pf) -
                                generator_apply(GeneratorName::P, k,
                                                position_apply(kind, j, f));
            const Section rhs = (j == k) ? kI * f : zero_section();
            worst = std::max(worst, sup_diff(lhs, rhs, pts));
          }
      }
    }
    return worst;
  }});
  out.push_back({"hb-commuting", 1e-6, [seed] {
    Sampler s(seed + 31);
    const auto pts = s.shell_points(5);
    double worst = 0.0;
    for (const auto& name : {"gauss-circ", "gauss-wide"}) {
      const Section f = catalog_section(name);
      for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
          worst = std::max(
              worst,
              sup_norm(commutator_residual(PositionKind::HawtonBaylis, i, j, f),
                       pts));
        }
    }
    return worst;
  }});
  out.push_back({"pryce-commutator-curvature", 1e-6, [seed] {
    Sampler s(seed + 32);
    const auto pts = s.shell_points(5);
    double worst = 0.0;
    for (const auto& name : {"gauss-circ", "gauss-y"}) {
      const Section f = catalog_section(name);
      for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
          worst = std::max(
              worst,
              sup_norm(commutator_residual(PositionKind::Pryce, i, j, f), pts));
        }
    }
    return worst;
  }});
  out.push_back({"flat-commuting", 1e-8, [seed] {
    Sampler s(seed + 33);
    const auto pts = s.shell_points(5);
    const Section f = catalog_section("poly-gauss");
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) {
        worst = std::max(
            worst, sup_norm(commutator_residual(PositionKind::Flat, i, j, f), pts));
      }
    return worst;
  }});
  out.push_back({"qhb3-equals-qpr3", 1e-10, [seed] {
    Sampler s(seed + 34);
    const auto pts = s.shell_points(20);
    double worst = 0.0;
    for (const auto& name : {"gauss-x", "gauss-wide"}) {
      const Section f = catalog_section(name);
      worst = std::max(worst,
                       sup_diff(position_apply(PositionKind::HawtonBaylis, 3, f),
                                position_apply(PositionKind::Pryce, 3, f), pts));
    }
    return worst;
  }});
  out.push_back({"hb-axial-symmetry", 1e-6, [seed] {
    Sampler s(seed + 35);
    const auto pts = s.shell_points(4);
    const Section f = catalog_section("gauss-circ");
    auto Q = [&](int i, const Section& g) {
      return position_apply(PositionKind::HawtonBaylis, i, g);
    };
    auto M3 = [&](const Section& g) {
      return generator_apply(GeneratorName::M, 3, g);
    };
    double worst = 0.0;
    // [M3, Q1] = iQ2, [M3, Q2] = -iQ1, [M3, Q3] = 0
    worst = std::max(worst, sup_diff(M3(Q(1, f)) - Q(1, M3(f)), kI * Q(2, f), pts));
    worst = std::max(worst, sup_diff(M3(Q(2, f)) - Q(2, M3(f)), -kI * Q(1, f), pts));
    worst = std::max(worst, sup_norm(M3(Q(3, f)) - Q(3, M3(f)), pts));
    return worst;
  }});
  out.push_back({"pryce-helicity-commute", 1e-8, [seed] {
    Sampler s(seed + 36);
    const auto pts = s.shell_points(5);
    double worst = 0.0;
    for (const auto& name : {"gauss-x", "gauss-circ"}) {
      const Section f = catalog_section(name);
      for (int i = 1; i <= 3; ++i) {
        const Section lhs = position_apply(PositionKind::Pryce, i, helicity_apply(f)) -
                            helicity_apply(position_apply(PositionKind::Pryce, i, f));
        worst = std::max(worst, sup_norm(lhs, pts));
      }
    }
    return worst;
  }});
  out.push_back({"pryce-symmetrized-generators", 1e-6, [seed] {
    Sampler s(seed + 37);
    const auto pts = s.shell_points(5);
    double worst = 0.0;
    for (const auto& name : {"gauss-x", "gauss-circ"}) {
      const Section f = catalog_section(name);
      for (int i = 1; i <= 3; ++i) {
        const Section t1 =
            generator_apply(GeneratorName::N, i, over_p_norm(f), MeasureKind::Plain);
        const Section t2 =
            over_p_norm(generator_apply(GeneratorName::N, i, f, MeasureKind::Plain));
        const Section sym = Complex(0.5) * (t1 + t2);
        worst = std::max(
            worst, sup_diff(sym, position_apply(PositionKind::Pryce, i, f), pts));
      }
    }
    return worst;
  }});
  out.push_back({"circle-eigenrelations", 1e-7, [seed] {
    Sampler s(seed + 38);
    const auto pts = s.shell_points(6);
    double worst = 0.0;
    for (double R : {0.5, 1.0, 3.0}) {
      const Section f = circle_state(R);
      worst = std::max(worst, sup_norm(generator_apply(GeneratorName::M, 3, f), pts));
      worst = std::max(
          worst, sup_norm(position_apply(PositionKind::HawtonBaylis, 3, f), pts));
      auto Q = [&](int i, const Section& g) {
        return position_apply(PositionKind::HawtonBaylis, i, g);
      };
      const Section q2 = Q(1, Q(1, f)) + Q(2, Q(2, f));
      worst = std::max(worst, sup_diff(q2, Complex(R * R) * f, pts));
    }
    return worst;
  }});
  out.push_back({"circle-matches-loop", 1e-8, [seed] {
    Sampler s(seed + 39);
    const double R = 1.0;
    LoopSpec loop;
    loop.r = [R](double t) { return Vec3(R * std::cos(t), R * std::sin(t), 0.0); };
    loop.velocity = [R](double t) {
      return Vec3(-R * std::sin(t), R * std::cos(t), 0.0);
    };
    loop.n_nodes = 4096;
    const Section fl = loop_state(loop);
    const Section fc = circle_state(R);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
      Vec3 p(s.uni(-4, 4), s.uni(-4, 4), s.uni(-4, 4));
      worst = std::max(worst, (fl.eval(p) - fc.eval(p)).cwiseAbs().maxCoeff());
    }
    return worst;
  }});
  out.push_back({"loop-transversality", 1e-10, [seed] {
    Sampler s(seed + 40);
    LoopSpec loop;
    loop.r = [](double t) {
      return Vec3(std::cos(t) + 0.3 * std::cos(2 * t), std::sin(t) - 0.2 * std::sin(2 * t),
                  0.4 * std::sin(t));
    };
    loop.velocity = [](double t) {
      return Vec3(-std::sin(t) - 0.6 * std::sin(2 * t), std::cos(t) - 0.4 * std::cos(2 * t),
                  0.4 * std::cos(t));
    };
    loop.n_nodes = 2048;
    const Section fl = loop_state(loop);
    double worst = 0.0;
    for (int it = 0; it < 30; ++it) {
      Vec3 p(s.uni(-3, 3), s.uni(-3, 3), s.uni(-3, 3));
      worst = std::max(worst, std::abs(p.cast<Complex>().dot(fl.eval(p))));
    }
    return worst;
  }});
  // the washer checks share one gridded state
  auto washer_field = []() {
    static const GridField field = [] {
      WasherState w{1.0, std::exp(1.0), 0.0, 2.0 * std::numbers::pi_v<double>};
      GridSpec spec;
      spec.n = 128;
      spec.pmax = 40.0;
      return washer_grid(w, spec);
    }();
    return &field;
  };
  out.push_back({"washer-norm", 1e-3, [washer_field] {
    // analytic squared norm of this washer is exactly 1
    return std::abs(washer_field()->norm2() - 1.0);
  }});
  out.push_back({"washer-transversality", 5e-3, [] {
    WasherState w{1.0, std::exp(1.0), 0.0, 2.0 * std::numbers::pi_v<double>};
    double prev = 1e300;
    double last = 0.0;
    for (int n : {64, 128}) {
      GridSpec spec;
      spec.n = n;
      spec.pmax = 40.0 * n / 128.0;  // fixed position window, finer cells
      last = transversality_residual(washer_grid(w, spec));
      if (last >= prev) return 1.0;  // must decrease as the grid doubles
      prev = last;
    }
    return last;
  }});
  // Delta = support dilated by 0.25: wide enough that the washer itself is
  // weakly localized inside, tight enough to expose the helicity spreading.
  auto region = [] {
    const double m = 0.25;
    return RegionSpec::cylinder_shell(1.0 - m, std::exp(1.0) + m, -m,
                                      2.0 * std::numbers::pi_v<double> + m);
  };
  out.push_back({"washer-pov", 1e-12, [washer_field, region] {
    const double val = pov_expectation(*washer_field(), region());
    return std::max(0.0, 0.999 - val);
  }});
  out.push_back({"washer-pov-helicity", 1e-12, [washer_field, region] {
    const double val =
        pov_expectation(project_helicity(*washer_field(), +1), region());
    return std::max(0.0, val - 0.95);
  }});
  out.push_back({"washer-q-phi", 1e-3, [washer_field] {
    // phi = indicator(x^2+y^2 <= (2 R2)^2) contains the washer entirely
    const double r2 = std::exp(1.0);
    const double val = q_phi_expectation(
        *washer_field(), [r2](double rho2) { return rho2 <= 4.0 * r2 * r2 ? 1.0 : 0.0; });
    return std::abs(val - 1.0);
  }});
  out.push_back({"grid-parseval", 1e-10, [] {
    GridSpec spec;
    spec.n = 32;
    spec.pmax = 8.0;
    const GridField f = sample_momentum(spec, [](const Vec3& p) {
      const double g = std::exp(-0.5 * (p - Vec3(0.4, -0.2, 0.3)).squaredNorm());
      return CVec3(g, Complex(0.0, 0.5 * g), -0.25 * g);
    });
    const double n_mom = f.norm2();
    const double n_pos = position_norm2(spec, to_position(f));
    return std::abs(n_mom - n_pos) / n_mom;
  }});
  out.push_back({"grid-roundtrip", 1e-10, [] {
    GridSpec spec;
    spec.n = 32;
    spec.pmax = 8.0;
    const GridField f = sample_momentum(spec, [](const Vec3& p) {
      const double g = std::exp(-0.4 * p.squaredNorm());
      return CVec3(g * p.x(), Complex(0.0, g), g * (1.0 - p.z()));
    });
    const GridField back = from_position(spec, to_position(f));
    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < f.sites(); ++k) {
        worst = std::max(worst, std::abs(f.comp[c][k] - back.comp[c][k]));
      }
    return worst;
  }});
  return out;
}

}  // namespace

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::ordered_json SuiteReport::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.passed ? "pass" : "fail";
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    if (with_timings) cj["runtime_ms"] = c.runtime_ms;
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      const std::map<std::string, double>& tol_overrides) {
  SuiteReport report;
  report.suite = name;
  report.seed = seed;
  std::vector<CheckSpec> specs;
  auto append = [&specs](std::vector<CheckSpec> more) {
    for (auto& c : more) specs.push_back(std::move(c));
  };
  if (name == "cocycle") {
    append(cocycle_checks(seed));
  } else if (name == "generators") {
    append(generator_checks(seed));
  } else if (name == "connections") {
    append(connection_checks(seed));
  } else if (name == "localization") {
    append(localization_checks(seed));
  } else if (name == "all") {
    append(cocycle_checks(seed));
    append(generator_checks(seed));
    append(connection_checks(seed));
    append(localization_checks(seed));
  } else {
    throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
  }
  run_checks(report, specs, tol_overrides);
  return report;
}

}  // namespace lightcone
