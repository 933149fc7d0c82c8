// Command-line front end: verification suites and figure-data export.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lightcone/bessel.hpp"
#include "lightcone/catalog.hpp"
#include "lightcone/cocycle.hpp"
#include "lightcone/connections.hpp"
#include "lightcone/grid_field.hpp"
#include "lightcone/localization.hpp"
#include "lightcone/polarization.hpp"
#include "lightcone/suites.hpp"

namespace {

using lightcone::Vec3;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

std::vector<double> parse_numbers(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

Vec3 parse_vec3(const std::string& s) {
  const auto v = parse_numbers(s, ',');
  if (v.size() != 3) throw CLI::ValidationError("expected x,y,z, got '" + s + "'");
  return {v[0], v[1], v[2]};
}

ordered_json matrix_json(const lightcone::Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

lightcone::RegionSpec parse_region(const std::string& s) {
  if (s == "all") return lightcone::RegionSpec::all();
  std::stringstream ss(s);
  std::string kind;
  std::getline(ss, kind, ':');
  std::string rest;
  std::getline(ss, rest);
  const auto v = parse_numbers(rest, ':');
  if (kind == "shell" && v.size() == 4) {
    return lightcone::RegionSpec::cylinder_shell(v[0], v[1], v[2], v[3]);
  }
  if (kind == "box" && v.size() == 6) {
    return lightcone::RegionSpec::box({v[0], v[1], v[2]}, {v[3], v[4], v[5]});
  }
  throw CLI::ValidationError(
      "region must be all | shell:r1:r2:z1:z2 | box:x1:y1:z1:x2:y2:z2");
}

struct VerifyOpts {
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::vector<std::string> tol;
  std::string out;
  bool timings = false;
};

int run_verify(const VerifyOpts& o) {
  std::map<std::string, double> overrides;
  for (const auto& t : o.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --tol entry '" << t << "', expected name=value\n";
      return kExitUsage;
    }
    overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  lightcone::SuiteReport report;
  try {
    report = lightcone::run_suite(o.suite, o.seed, overrides);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  write_text(o.out, report.to_json(o.timings).dump(2) + "\n");
  return report.all_passed() ? kExitPass : kExitCheckFailure;
}

struct FrameFieldOpts {
  int n_theta = 20;
  int n_phi = 40;
  bool json = false;
  std::string out;
};

int run_frame_field(const FrameFieldOpts& o) {
  const lightcone::FrameTriple frame = lightcone::standard_frame();
  double worst_ortho = 0.0;
  struct Row {
    Vec3 pi, e1, e2, e3;
  };
  std::vector<Row> rows;
  for (int it = 0; it < o.n_theta; ++it) {
    // skip the poles; the frame is singular on the +z ray
    const double theta = std::numbers::pi * (it + 0.5) / o.n_theta;
    for (int ip = 0; ip < o.n_phi; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / o.n_phi;
      const Vec3 pi(std::sin(theta) * std::cos(phi),
                    std::sin(theta) * std::sin(phi), std::cos(theta));
      Row r;
      r.pi = pi;
      r.e1 = frame.e1.eval(pi).real();
      r.e2 = frame.e2.eval(pi).real();
      r.e3 = frame.e3.eval(pi).real();
      lightcone::Mat3 e;
      e.col(0) = r.e1;
      e.col(1) = r.e2;
      e.col(2) = r.e3;
      worst_ortho = std::max(
          worst_ortho,
          (e.transpose() * e - lightcone::Mat3::Identity()).cwiseAbs().maxCoeff());
      rows.push_back(r);
    }
  }
  std::ostringstream text;
  if (o.json) {
    ordered_json j;
    j["mesh"] = {{"n_theta", o.n_theta}, {"n_phi", o.n_phi}};
    j["max_orthonormality_residual"] = worst_ortho;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"pi", {r.pi.x(), r.pi.y(), r.pi.z()}},
                           {"e1", {r.e1.x(), r.e1.y(), r.e1.z()}},
                           {"e2", {r.e2.x(), r.e2.y(), r.e2.z()}},
                           {"e3", {r.e3.x(), r.e3.y(), r.e3.z()}}});
    }
    text << j.dump(2) << "\n";
  } else {
    text << "# unit-sphere moving frame samples, mesh " << o.n_theta << "x"
         << o.n_phi << ", max orthonormality residual " << worst_ortho << "\n";
    text << "pi_x,pi_y,pi_z,e1_x,e1_y,e1_z,e2_x,e2_y,e2_z,e3_x,e3_y,e3_z\n";
    char line[512];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof(line),
                    "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,"
                    "%.12g,%.12g,%.12g\n",
                    r.pi.x(), r.pi.y(), r.pi.z(), r.e1.x(), r.e1.y(), r.e1.z(),
                    r.e2.x(), r.e2.y(), r.e2.z(), r.e3.x(), r.e3.y(), r.e3.z());
      text << line;
    }
  }
  write_text(o.out, text.str());
  return kExitPass;
}

struct BesselOpts {
  double R = 1.0;
  double rho_max = 20.0;
  int samples = 1000;
  std::string out;
};

int run_bessel(const BesselOpts& o) {
  std::ostringstream text;
  text << "# J1(R rho) samples, R = " << o.R << "\n";
  text << "rho,j1\n";
  char line[128];
  for (int i = 0; i <= o.samples; ++i) {
    const double rho = o.rho_max * i / o.samples;
    std::snprintf(line, sizeof(line), "%.12g,%.12g\n", rho,
                  lightcone::bessel_j1(o.R * rho));
    text << line;
  }
  write_text(o.out, text.str());
  return kExitPass;
}

struct WasherOpts {
  double r1 = 1.0;
  double r2 = std::exp(1.0);
  double z1 = 0.0;
  double z2 = 2.0 * std::numbers::pi;
  int grid = 128;
  double pmax = 40.0;
  double margin = 0.25;
  std::string out;
};

int run_washer(const WasherOpts& o) {
  const lightcone::WasherState w{o.r1, o.r2, o.z1, o.z2};
  w.validate();
  lightcone::GridSpec spec;
  spec.n = o.grid;
  spec.pmax = o.pmax;
  const lightcone::GridField field = lightcone::washer_grid(w, spec);
  const auto pos = lightcone::to_position(field);

  // density samples on the y = 0 midplane (data behind the washer figure)
  std::ostringstream csv;
  csv << "# washer position-space density, y=0 slice; |f| in 1/length, "
         "lengths in nominal nm\n";
  csv << "x,z,abs_f\n";
  const int iy = o.grid / 2;
  char line[128];
  for (int ix = 0; ix < o.grid; ++ix) {
    for (int iz = 0; iz < o.grid; ++iz) {
      const Vec3 x = field.x_at(ix, iy, iz);
      const std::size_t site = field.index(ix, iy, iz);
      double a2 = 0.0;
      for (int c = 0; c < 3; ++c) a2 += std::norm(pos[c][site]);
      std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g\n", x.x(), x.z(),
                    std::sqrt(a2));
      csv << line;
    }
  }
  write_text(o.out, csv.str());

  const auto region = lightcone::RegionSpec::cylinder_shell(
      o.r1 - o.margin, o.r2 + o.margin, o.z1 - o.margin, o.z2 + o.margin);
  ordered_json j;
  j["washer"] = {{"r1", o.r1}, {"r2", o.r2}, {"z1", o.z1}, {"z2", o.z2}};
  j["grid"] = {{"n", o.grid}, {"pmax", o.pmax}};
  j["norm2_analytic"] = w.squared_norm();
  j["norm2_grid"] = field.norm2();
  j["pov_support_plus_margin"] = lightcone::pov_expectation(field, region);
  j["pov_helicity_plus"] = lightcone::pov_expectation(
      lightcone::project_helicity(field, +1), region);
  j["transversality_residual"] = lightcone::transversality_residual(field);
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

struct LocalizeOpts {
  std::string state;
  std::string region = "all";
  int grid = 128;
  double pmax = 40.0;
  double phi_radius = 0.0;
  std::string out;
};

lightcone::GridField localize_state(const LocalizeOpts& o) {
  lightcone::GridSpec spec;
  spec.n = o.grid;
  spec.pmax = o.pmax;
  if (o.state.rfind("washer:", 0) == 0) {
    const auto v = parse_numbers(o.state.substr(7), ':');
    if (v.size() != 4) {
      throw CLI::ValidationError("washer state: washer:r1:r2:z1:z2");
    }
    return lightcone::washer_grid({v[0], v[1], v[2], v[3]}, spec);
  }
  const lightcone::Section f = lightcone::catalog_section(o.state);
  return lightcone::sample_momentum(spec,
                                    [&f](const Vec3& p) { return f.eval(p); });
}

int run_localize(const LocalizeOpts& o) {
  const lightcone::GridField field = localize_state(o);
  const auto region = parse_region(o.region);
  ordered_json j;
  j["state"] = o.state;
  j["region"] = o.region;
  j["pov_expectation"] = lightcone::pov_expectation(field, region);
  if (o.phi_radius > 0.0) {
    const double r2 = o.phi_radius * o.phi_radius;
    j["q_phi_expectation_disk"] = lightcone::q_phi_expectation(
        field, [r2](double rho2) { return rho2 <= r2 ? 1.0 : 0.0; });
  }
  write_text(o.out, j.dump(2) + "\n");
  return kExitPass;
}

struct ConnectionReportOpts {
  std::string which = "teleparallel";
  std::vector<std::string> points;
  std::string out;
};

int run_connection_report(const ConnectionReportOpts& o) {
  lightcone::ConnectionCoeffs conn;
  lightcone::MetricField metric;
  if (o.which == "teleparallel") {
    conn = lightcone::teleparallel_gamma();
  } else if (o.which == "pryce") {
    conn = lightcone::pryce_gamma();
    metric = [](const Vec3&) { return lightcone::Mat3(lightcone::Mat3::Identity()); };
  } else {
    std::cerr << "unknown connection '" << o.which
              << "' (teleparallel | pryce)\n";
    return kExitUsage;
  }
  ordered_json j;
  j["connection"] = o.which;
  j["chart"] =
      conn.chart == lightcone::Chart::Stereographic ? "stereographic" : "cartesian";
  j["points"] = ordered_json::array();
  for (const auto& ps : o.points) {
    const Vec3 pt = parse_vec3(ps);
    const auto tor = lightcone::torsion(conn, pt);
    const auto cur = lightcone::curvature(conn, pt);
    const auto semi = lightcone::semi_symmetry_test(conn, pt, metric);
    ordered_json pj;
    pj["point"] = {pt.x(), pt.y(), pt.z()};
    ordered_json tj = ordered_json::array();
    for (int i = 0; i < 3; ++i)
      for (int jj = i + 1; jj < 3; ++jj)
        for (int k = 0; k < 3; ++k) {
          if (std::abs(tor.component(i, jj, k)) > 1e-14) {
            tj.push_back({{"i", i + 1},
                          {"j", jj + 1},
                          {"k", k + 1},
                          {"value", tor.component(i, jj, k)}});
          }
        }
    pj["torsion_nonzero"] = tj;
    pj["curvature_max_abs"] = cur.max_abs();
    pj["semi_symmetric"] = semi.verdict;
    pj["tau"] = {semi.tau.x(), semi.tau.y(), semi.tau.z()};
    pj["semi_symmetry_residual"] = semi.residual;
    if (metric) pj["metric_decomposition_residual"] = semi.metric_residual;
    j["points"].push_back(pj);
  }
  write_text(o.out, j.dump(2) + "\n");
  return kExitPass;
}

struct BoostDemoOpts {
  std::string w = "0,0,1";
  double s = 1.0;
  std::string p = "1,0,0";
  double m = 0.0;
  std::string out;
};

int run_boost_demo(const BoostDemoOpts& o) {
  const Vec3 w = parse_vec3(o.w).normalized();
  const Vec3 p = parse_vec3(o.p);
  const lightcone::LorentzMatrix L = lightcone::boost_matrix({w, o.s});
  ordered_json j;
  j["boost"] = {{"axis", {w.x(), w.y(), w.z()}}, {"rapidity", o.s}};
  j["p"] = {p.x(), p.y(), p.z()};
  j["m"] = o.m;
  j["d0"] = matrix_json(lightcone::d0(L, p).d);
  if (o.m > 0.0) {
    j["dm"] = matrix_json(
        lightcone::dm(L, lightcone::ShellPoint::make(p, o.m)).d);
  }
  j["d0_prime"] = matrix_json(lightcone::d0_prime({w, o.s}, p).d);
  for (int sign : {+1, -1}) {
    try {
      j[sign > 0 ? "limit_plus" : "limit_minus"] =
          matrix_json(lightcone::d0_prime_limit(w, sign, p).d);
    } catch (const std::exception& e) {
      j[sign > 0 ? "limit_plus" : "limit_minus"] = e.what();
    }
  }
  write_text(o.out, j.dump(2) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"light-cone momentum-space representation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config")->description(
      "flat key=value config file; flags override it");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", vo.suite,
                     "cocycle | generators | connections | localization | all");
  verify->add_option("--seed", vo.seed, "RNG seed for sampled checks");
  verify->add_option("--tol", vo.tol, "tolerance override name=value")
      ->take_all();
  verify->add_option("--out", vo.out, "write the JSON report here");
  verify->add_flag("--timings", vo.timings, "include per-check runtimes");

  FrameFieldOpts fo;
  auto* ff = app.add_subcommand("frame-field",
                                "sample the moving frame on the unit sphere");
  ff->add_option("--mesh-theta", fo.n_theta, "polar mesh count")
      ->check(CLI::PositiveNumber);
  ff->add_option("--mesh-phi", fo.n_phi, "azimuthal mesh count")
      ->check(CLI::PositiveNumber);
  ff->add_flag("--json", fo.json, "JSON instead of CSV");
  ff->add_option("--out", fo.out, "output path (default stdout)");

  BesselOpts bo;
  auto* be = app.add_subcommand("bessel", "tabulate J1(R rho)");
  be->add_option("--R", bo.R, "radius factor")->check(CLI::PositiveNumber);
  be->add_option("--rho-max", bo.rho_max, "sample range end")
      ->check(CLI::PositiveNumber);
  be->add_option("--samples", bo.samples, "sample count")
      ->check(CLI::PositiveNumber);
  be->add_option("--out", bo.out, "output path (default stdout)");

  WasherOpts wo;
  auto* wa = app.add_subcommand("washer",
                                "washer state: density slice and POV metrics");
  wa->add_option("--r1", wo.r1)->check(CLI::PositiveNumber);
  wa->add_option("--r2", wo.r2)->check(CLI::PositiveNumber);
  wa->add_option("--z1", wo.z1);
  wa->add_option("--z2", wo.z2);
  wa->add_option("--grid", wo.grid, "grid size N")->check(CLI::PositiveNumber);
  wa->add_option("--pmax", wo.pmax, "momentum cutoff")
      ->check(CLI::PositiveNumber);
  wa->add_option("--margin", wo.margin, "POV region dilation");
  wa->add_option("--out", wo.out, "density CSV path (default stdout)");

  LocalizeOpts lo;
  auto* loc = app.add_subcommand("localize",
                                 "POV expectations of a gridded state");
  loc->add_option("--state", lo.state,
                  "washer:r1:r2:z1:z2 or a catalog section name")
      ->required();
  loc->add_option("--region", lo.region,
                  "all | shell:r1:r2:z1:z2 | box:x1:y1:z1:x2:y2:z2");
  loc->add_option("--grid", lo.grid, "grid size N")->check(CLI::PositiveNumber);
  loc->add_option("--pmax", lo.pmax, "momentum cutoff")
      ->check(CLI::PositiveNumber);
  loc->add_option("--phi-radius", lo.phi_radius,
                  "also report Q_phi with phi = disk indicator of this radius");
  loc->add_option("--out", lo.out, "output path (default stdout)");

  ConnectionReportOpts co;
  auto* cr = app.add_subcommand("connection-report",
                                "torsion/curvature/semi-symmetry at points");
  cr->add_option("--connection", co.which, "teleparallel | pryce");
  cr->add_option("--point", co.points, "chart point x,y,z (repeatable)")
      ->required()
      ->take_all();
  cr->add_option("--out", co.out, "output path (default stdout)");

  BoostDemoOpts bd;
  auto* bdc = app.add_subcommand("boost-demo",
                                 "print cocycle matrices for a boost");
  bdc->add_option("--w", bd.w, "boost axis x,y,z");
  bdc->add_option("--s", bd.s, "rapidity");
  bdc->add_option("--p", bd.p, "momentum x,y,z");
  bdc->add_option("--m", bd.m, "mass (0 = massless)");
  bdc->add_option("--out", bd.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (ff->parsed()) return run_frame_field(fo);
    if (be->parsed()) return run_bessel(bo);
    if (wa->parsed()) return run_washer(wo);
    if (loc->parsed()) return run_localize(lo);
    if (cr->parsed()) return run_connection_report(co);
    if (bdc->parsed()) return run_boost_demo(bd);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
