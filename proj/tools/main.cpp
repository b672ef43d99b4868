// Command-line front end: certify, verify, sweep, average, check-geometry.
//
// Exit codes: 0 = VIOLATED verdict / all checks pass, 2 = INCONCLUSIVE
// verdict / failed checks, 1 = usage or I/O error. All file outputs are
// written atomically (temp file + rename), and identical invocations on
// identical inputs produce byte-identical outputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eccert/averaging.hpp"
#include "eccert/calculus.hpp"
#include "eccert/certifier.hpp"
#include "eccert/geometry.hpp"
#include "eccert/profile.hpp"
#include "eccert/sampled.hpp"
#include "eccert/special_integrals.hpp"
#include "eccert/version.hpp"

namespace {

using namespace eccert;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() +
                               "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// certify

struct CertifyOptions {
  std::string domain;
  double r1 = 1.0;
  double r2 = 2.0;
  double flux = 0.0;
  std::optional<int> mode;
  std::string profile;
  std::string swirl;
  std::size_t nodes_r = 64;
  std::size_t nodes_theta = 128;
  std::size_t nodes_chi = 64;
  double tol = 1e-8;
  std::string out;
};

int run_certify(const CertifyOptions& o) {
  if (o.flux == 0.0) {
    std::fprintf(stderr, "certify: --flux must be nonzero\n");
    return 1;
  }
  const bool has_profile = !o.profile.empty();
  if (o.mode.has_value() && has_profile) {
    std::fprintf(stderr,
                 "certify: --mode and --profile select different witness "
                 "families; give exactly one\n");
    return 1;
  }
  if (o.mode.has_value() && o.flux < 0.0) {
    std::fprintf(stderr,
                 "certify: mode witnesses certify positive flux; use "
                 "--profile (or omit it) for negative flux\n");
    return 1;
  }
  if (!o.swirl.empty() && (o.domain == "shell" || has_profile || o.flux < 0.0)) {
    std::fprintf(stderr,
                 "certify: --swirl applies only to annulus mode-witness "
                 "certificates (positive flux)\n");
    return 1;
  }
  QuadratureSpec q;
  q.nodes_r = o.nodes_r;
  q.nodes_theta = o.nodes_theta;
  q.nodes_chi = o.nodes_chi;
  q.rel_tol = o.tol;

  Certificate cert;
  if (o.domain == "annulus") {
    const AnnulusGeometry geom(o.r1, o.r2);
    if (o.flux > 0.0 && !has_profile) {
      const ScalarProfile v =
          o.swirl.empty() ? ScalarProfile::zero() : parse_profile(o.swirl);
      cert = certify_outflow_2d(geom, o.flux, v, o.mode, q);
    } else {
      std::optional<ScalarProfile> f;
      if (has_profile) f = parse_profile(o.profile);
      cert = certify_inflow_2d(geom, o.flux, f, q);
    }
  } else {
    const ShellGeometry geom(o.r1, o.r2);
    if (o.flux > 0.0 && !has_profile) {
      cert = certify_outflow_3d(geom, o.flux, o.mode, q);
    } else {
      std::optional<ScalarProfile> f;
      if (has_profile) f = parse_profile(o.profile);
      cert = certify_inflow_3d(geom, o.flux, f, q);
    }
  }

  std::fputs(cert.to_text().c_str(), stdout);
  if (!o.out.empty()) {
    write_text_file(o.out, cert.to_json().dump(2) + "\n");
    std::printf("wrote %s\n", o.out.c_str());
  }
  return cert.violated() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  double r1 = 1.0;
  double r2 = 2.0;
  std::optional<int> mode;
  std::size_t nodes_r = 64;
  std::size_t nodes_theta = 128;
  std::size_t nodes_chi = 64;
  double tol = 1e-8;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  QuadratureSpec q;
  q.nodes_r = o.nodes_r;
  q.nodes_theta = o.nodes_theta;
  q.nodes_chi = o.nodes_chi;
  q.rel_tol = o.tol;
  const std::vector<int> modes =
      o.mode.has_value() ? std::vector<int>{*o.mode}
                         : std::vector<int>{1, 2, 3, 7};
  const IdentityReport report = identity_report(o.r1, o.r2, modes, q);
  std::fputs(report.to_text().c_str(), stdout);
  if (!o.out.empty()) {
    write_text_file(o.out, report.to_json().dump(2) + "\n");
    std::printf("wrote %s\n", o.out.c_str());
  }
  return report.all_pass() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  double rho_min = 1.1;
  double rho_max = 8.0;
  std::size_t steps = 40;
  std::string csv;
};

int run_sweep(const SweepOptions& o) {
  if (!(o.rho_min > 1.0) || !(o.rho_max >= o.rho_min) || o.steps < 1) {
    std::fprintf(stderr,
                 "sweep: need 1 < --rho-min <= --rho-max and --steps >= 1\n");
    return 1;
  }
  std::string csv = "rho,F1,F2,G1,G2,m_star_2d,m_star_3d,kappa_at_mstar\n";
  for (std::size_t i = 0; i < o.steps; ++i) {
    const double t =
        o.steps == 1 ? 0.0
                     : static_cast<double>(i) / static_cast<double>(o.steps - 1);
    const double rho = o.rho_min + (o.rho_max - o.rho_min) * t;
    const SpecialIntegrals si = compute_special_integrals(rho);
    const int m2 = minimal_m(rho);
    const int m3 = minimal_m3(rho);
    const double md = static_cast<double>(m2);
    const double kap = md * md * si.f1 - si.f2;
    csv += format_g17(rho) + "," + format_g17(si.f1) + "," +
           format_g17(si.f2) + "," + format_g17(si.g1) + "," +
           format_g17(si.g2) + "," + std::to_string(m2) + "," +
           std::to_string(m3) + "," + format_g17(kap) + "\n";
  }
  if (o.csv.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(o.csv, csv);
    std::printf("wrote %zu rows to %s\n", o.steps, o.csv.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// average

struct AverageOptions {
  std::string input;
  std::string out;
  std::size_t angles = 256;
  std::vector<std::size_t> euler = {64, 64, 32};
  std::string convention = "zyz";
};

int run_average(const AverageOptions& o) {
  const LoadedField loaded = read_field_file(o.input);
  if (loaded.field2d) {
    const SampledField2DPtr avg =
        average_2d(*loaded.field2d, RotationSpec2D{o.angles});
    write_field_file(o.out, *avg);
    std::printf("averaged planar field (%zu x %zu grid, %zu rotations) -> %s\n",
                loaded.field2d->nr(), loaded.field2d->ntheta(), o.angles,
                o.out.c_str());
  } else {
    RotationSpec3D spec;
    spec.n1 = o.euler[0];
    spec.n2 = o.euler[1];
    spec.n3 = o.euler[2];
    spec.convention = o.convention == "zxz" ? EulerConvention::zxz
                                            : EulerConvention::zyz;
    const SampledField3DPtr avg = average_3d(*loaded.field3d, spec);
    write_field_file(o.out, *avg);
    std::printf(
        "averaged shell field (%zu x %zu x %zu grid, %zu x %zu x %zu "
        "rotations) -> %s\n",
        loaded.field3d->nr(), loaded.field3d->nchi(), loaded.field3d->ntheta(),
        spec.n1, spec.n2, spec.n3, o.out.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check-geometry

struct CheckGeometryOptions {
  std::string spec_path;
  std::string out;
};

int run_check_geometry(const CheckGeometryOptions& o) {
  const PlanarMultiDomain domain =
      multidomain_from_json_text(read_text_file(o.spec_path));
  nlohmann::ordered_json components = nlohmann::ordered_json::array();
  bool all = true;
  for (std::size_t i = 0; i < domain.inner_count(); ++i) {
    const std::optional<Circle> witness = separating_circle_exists(domain, i);
    nlohmann::ordered_json entry;
    entry["index"] = i;
    entry["witness_found"] = witness.has_value();
    if (witness) {
      entry["center"] = {witness->center.x, witness->center.y};
      entry["radius"] = witness->radius;
      std::printf(
          "component %zu: separating circle found (center (%s, %s), radius "
          "%s)\n",
          i, format_g17(witness->center.x).c_str(),
          format_g17(witness->center.y).c_str(),
          format_g17(witness->radius).c_str());
    } else {
      all = false;
      std::printf("component %zu: no concentric separating circle found\n", i);
    }
    components.push_back(entry);
  }
  std::printf("all components separated: %s\n", all ? "yes" : "no");
  if (!o.out.empty()) {
    nlohmann::ordered_json j;
    j["components"] = components;
    j["all_separated"] = all;
    write_text_file(o.out, j.dump(2) + "\n");
    std::printf("wrote %s\n", o.out.c_str());
  }
  return all ? 0 : 2;
}

void add_quadrature_flags(CLI::App* cmd, std::size_t* nr, std::size_t* ntheta,
                          std::size_t* nchi, double* tol) {
  cmd->add_option("--nodes-r", *nr, "Gauss-Legendre nodes in r")
      ->capture_default_str();
  cmd->add_option("--nodes-theta", *ntheta, "trapezoid nodes in theta")
      ->capture_default_str();
  cmd->add_option("--nodes-chi", *nchi,
                  "Gauss nodes in the shell polar angle (shell only)")
      ->capture_default_str();
  cmd->add_option("--tol", *tol, "relative quadrature tolerance")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical certifier for the solenoidal-extension smallness condition "
      "on annuli and spherical shells"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(eccert::kToolVersion));

  CertifyOptions cert_opts;
  CLI::App* certify = app.add_subcommand(
      "certify",
      "produce a violation certificate for the given domain and flux");
  certify->add_option("--domain", cert_opts.domain, "domain kind")
      ->required()
      ->check(CLI::IsMember({"annulus", "shell"}));
  certify->add_option("--r1", cert_opts.r1, "inner radius")->required();
  certify->add_option("--r2", cert_opts.r2, "outer radius")->required();
  certify
      ->add_option("--flux", cert_opts.flux,
                   "boundary flux (positive: outflow mode witness; negative: "
                   "inflow profile witness)")
      ->required();
  certify->add_option(
      "--mode", cert_opts.mode,
      "witness mode number (default: minimal certifying mode)");
  certify->add_option(
      "--profile", cert_opts.profile,
      "azimuthal witness profile poly:c0,c1,... (default for inflow: "
      "normalized boundary bump)");
  certify->add_option("--swirl", cert_opts.swirl,
                      "extension swirl profile poly:c0,c1,... (annulus "
                      "outflow only; certificates do not depend on it)");
  add_quadrature_flags(certify, &cert_opts.nodes_r, &cert_opts.nodes_theta,
                       &cert_opts.nodes_chi, &cert_opts.tol);
  certify->add_option("--out", cert_opts.out, "write JSON certificate here");

  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in self-consistency checks and report them");
  verify->add_option("--r1", verify_opts.r1, "inner radius")
      ->capture_default_str();
  verify->add_option("--r2", verify_opts.r2, "outer radius")
      ->capture_default_str();
  verify->add_option("--mode", verify_opts.mode,
                     "run checks with just this witness mode (default: modes "
                     "1, 2, 3, 7)");
  add_quadrature_flags(verify, &verify_opts.nodes_r, &verify_opts.nodes_theta,
                       &verify_opts.nodes_chi, &verify_opts.tol);
  verify->add_option("--out", verify_opts.out, "write JSON report here");

  SweepOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate the reduced integrals over an aspect-ratio range");
  sweep->add_option("--rho-min", sweep_opts.rho_min, "smallest aspect ratio")
      ->required();
  sweep->add_option("--rho-max", sweep_opts.rho_max, "largest aspect ratio")
      ->required();
  sweep
      ->add_option("--steps", sweep_opts.steps,
                   "number of rows (inclusive linear grid)")
      ->required();
  sweep->add_option("--csv", sweep_opts.csv,
                    "write the CSV table here (default: stdout)");

  AverageOptions avg_opts;
  CLI::App* average = app.add_subcommand(
      "average", "rotationally average a sampled field file");
  average->add_option("input", avg_opts.input, "sampled field file to read")
      ->required();
  average->add_option("--out", avg_opts.out, "write the averaged field here")
      ->required();
  average
      ->add_option("--angles", avg_opts.angles,
                   "rotation count for planar fields")
      ->capture_default_str();
  average
      ->add_option("--euler-nodes", avg_opts.euler,
                   "rotation grid (n1 n2 n3) for shell fields")
      ->expected(3);
  average
      ->add_option("--convention", avg_opts.convention,
                   "Euler angle convention for shell fields")
      ->check(CLI::IsMember({"zyz", "zxz"}))
      ->capture_default_str();

  CheckGeometryOptions geo_opts;
  CLI::App* check_geometry = app.add_subcommand(
      "check-geometry",
      "test a multiply-connected planar domain for separating circles");
  check_geometry
      ->add_option("--spec", geo_opts.spec_path,
                   "domain description JSON file")
      ->required();
  check_geometry->add_option("--out", geo_opts.out, "write JSON results here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (certify->parsed()) return run_certify(cert_opts);
    if (verify->parsed()) return run_verify(verify_opts);
    if (sweep->parsed()) return run_sweep(sweep_opts);
    if (average->parsed()) return run_average(avg_opts);
    if (check_geometry->parsed()) return run_check_geometry(geo_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
