#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eccert/averaging.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/sampled.hpp"

// Path of the command-line binary, injected by the build.
#ifndef ECCERT_CLI_PATH
#error "ECCERT_CLI_PATH must be defined"
#endif

namespace {

using namespace eccert;

struct FileGuard {
  std::string path;
  explicit FileGuard(std::string p) : path(std::move(p)) {}
  ~FileGuard() { std::remove(path.c_str()); }
};

int run_cli(const std::string& args, const std::string& stdout_path = "",
            const std::string& stderr_path = "") {
  std::string cmd = std::string(ECCERT_CLI_PATH) + " " + args;
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  if (!stderr_path.empty()) cmd += " 2> " + stderr_path;
  if (stderr_path.empty() && stdout_path.empty()) cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_all(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("certify reports violations with exit 0 and writes valid JSON") {
  const std::string out = "cli_cert.json";
  FileGuard guard(out);
  const int code = run_cli(
      "certify --domain annulus --r1 1 --r2 2 --flux 1 --out " + out);
  CHECK(code == 0);
  const nlohmann::json j = nlohmann::json::parse(read_all(out));
  CHECK(j.at("domain") == "annulus");
  CHECK(j.at("verdict") == "VIOLATED");
  CHECK(j.at("mode_or_profile") == "mode:6");
  CHECK(j.at("epsilon_star").get<double>() > 0.0);

  // Shell inflow certificate through the same entry point.
  const int code3 =
      run_cli("certify --domain shell --r1 1 --r2 2 --flux -1 --out " + out);
  CHECK(code3 == 0);
  const nlohmann::json j3 = nlohmann::json::parse(read_all(out));
  CHECK(j3.at("domain") == "shell");
  CHECK(j3.at("verdict") == "VIOLATED");
  CHECK(j3.at("mode_or_profile") == "profile:default-bump");
}

TEST_CASE("certify exits 2 when the requested witness fails to certify") {
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2 --flux 1 --mode 1") ==
        2);
}

TEST_CASE("usage and input errors exit 1") {
  // Zero flux is never certifiable input.
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2 --flux 0") == 1);
  // A mode witness and a profile witness are mutually exclusive.
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2 --flux -1 "
                "--mode 6 --profile poly:0,1,-1") == 1);
  // Swirl profiles only make sense for planar outflow certificates.
  CHECK(run_cli("certify --domain shell --r1 1 --r2 2 --flux 1 "
                "--swirl poly:0,1") == 1);
  // Oscillatory witnesses require outflow.
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2 --flux -1 --mode 6") ==
        1);
  // Unknown flag / missing required option.
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2 --flux 1 --bogus") ==
        1);
  CHECK(run_cli("certify --domain annulus --r1 1 --r2 2") == 1);
  CHECK(run_cli("frobnicate") == 1);

  // Malformed inputs for the file-reading subcommands.
  const std::string badfield = "cli_badfield.txt";
  FileGuard g1(badfield);
  write_all(badfield, "polar-grid 2 1 9 8\n");
  CHECK(run_cli("average " + badfield + " --out cli_badavg.txt") == 1);

  const std::string badgeo = "cli_badgeo.json";
  FileGuard g2(badgeo);
  write_all(badgeo, "{\"inner\":[]}");
  CHECK(run_cli("check-geometry --spec " + badgeo) == 1);
}

TEST_CASE("repeated runs produce byte-identical outputs") {
  const std::string a = "cli_rerun_a.json";
  const std::string b = "cli_rerun_b.json";
  FileGuard ga(a), gb(b);
  REQUIRE(run_cli("certify --domain shell --r1 1 --r2 2 --flux 1 --out " + a) ==
          0);
  REQUIRE(run_cli("certify --domain shell --r1 1 --r2 2 --flux 1 --out " + b) ==
          0);
  const std::string ja = read_all(a);
  CHECK(!ja.empty());
  CHECK(ja == read_all(b));

  const std::string ca = "cli_sweep_a.csv";
  const std::string cb = "cli_sweep_b.csv";
  FileGuard gc(ca), gd(cb);
  REQUIRE(run_cli("sweep --rho-min 1.1 --rho-max 3 --steps 12 --csv " + ca) ==
          0);
  REQUIRE(run_cli("sweep --rho-min 1.1 --rho-max 3 --steps 12 --csv " + cb) ==
          0);
  const std::string sa = read_all(ca);
  CHECK(!sa.empty());
  CHECK(sa == read_all(cb));
}

TEST_CASE("sweep emits one header plus one row per step") {
  const std::string csv = "cli_sweep_rows.csv";
  FileGuard guard(csv);
  REQUIRE(run_cli("sweep --rho-min 1.1 --rho-max 4 --steps 40 --csv " + csv) ==
          0);
  const std::string text = read_all(csv);
  CHECK(count_lines(text) == 41);
  CHECK(text.rfind("rho,F1,F2,G1,G2,m_star_2d,m_star_3d,kappa_at_mstar\n", 0) ==
        0);
  // Endpoints of the inclusive linspace are present.
  CHECK(text.find("\n1.1000000000000001,") != std::string::npos);
  CHECK(text.find("\n4,") != std::string::npos);
  // Invalid ranges are usage errors.
  CHECK(run_cli("sweep --rho-min 1 --rho-max 2 --steps 5") == 1);
}

TEST_CASE("average matches the in-process group average for planar fields") {
  const AnnulusGeometry geom(1.0, 2.0);
  const SampledField2DPtr raw = synthetic_extension_2d(
      geom, 1.4, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-1.0, 1.5, -0.5}), 3, 17, 16);
  const std::string in = "cli_avg_in2.txt";
  const std::string out = "cli_avg_out2.txt";
  FileGuard gi(in), go(out);
  write_field_file(in, *raw);

  REQUIRE(run_cli("average " + in + " --angles 32 --out " + out) == 0);

  const LoadedField loaded = read_field_file(out);
  REQUIRE(loaded.field2d != nullptr);
  const SampledField2DPtr expect = average_2d(*raw, RotationSpec2D{32});
  REQUIRE(loaded.field2d->samples_x().size() == expect->samples_x().size());
  for (std::size_t k = 0; k < expect->samples_x().size(); ++k) {
    CHECK(loaded.field2d->samples_x()[k] == expect->samples_x()[k]);
    CHECK(loaded.field2d->samples_y()[k] == expect->samples_y()[k]);
  }
}

TEST_CASE("average matches the in-process group average for shell fields") {
  const ShellGeometry geom(1.0, 2.0);
  const SphericalFieldPtr src = test_field_3d(geom, 2);
  const SampledField3DPtr raw = SampledField3D::sample(*src, geom, 9, 9, 8);
  const std::string in = "cli_avg_in3.txt";
  const std::string out = "cli_avg_out3.txt";
  FileGuard gi(in), go(out);
  write_field_file(in, *raw);

  REQUIRE(run_cli("average " + in + " --euler-nodes 8 8 8 --out " + out) == 0);

  const LoadedField loaded = read_field_file(out);
  REQUIRE(loaded.field3d != nullptr);
  const SampledField3DPtr expect =
      average_3d(*raw, RotationSpec3D{8, 8, 8, EulerConvention::zyz});
  REQUIRE(loaded.field3d->samples_x().size() == expect->samples_x().size());
  for (std::size_t k = 0; k < expect->samples_x().size(); ++k) {
    CHECK(loaded.field3d->samples_x()[k] == expect->samples_x()[k]);
    CHECK(loaded.field3d->samples_y()[k] == expect->samples_y()[k]);
    CHECK(loaded.field3d->samples_z()[k] == expect->samples_z()[k]);
  }
}

TEST_CASE("check-geometry finds separating circles for valid domains") {
  const std::string spec = "cli_geo.json";
  const std::string out = "cli_geo_out.json";
  FileGuard gs(spec), go(out);
  write_all(spec,
            R"({"outer":{"cx":0,"cy":0,"r":10},)"
            R"("inner":[{"cx":5,"cy":0,"r":1},{"cx":-5,"cy":0,"r":1}]})");
  CHECK(run_cli("check-geometry --spec " + spec + " --out " + out) == 0);
  const nlohmann::json j = nlohmann::json::parse(read_all(out));
  CHECK(j.at("all_separated") == true);
  CHECK(j.at("components").size() == 2);
  for (const auto& comp : j.at("components")) {
    CHECK(comp.at("witness_found") == true);
    CHECK(comp.at("radius").get<double>() > 1.0);
  }
}

TEST_CASE("verify runs the identity checks for a single mode") {
  const std::string out = "cli_verify.txt";
  FileGuard guard(out);
  CHECK(run_cli("verify --r1 1 --r2 2 --mode 3", out) == 0);
  const std::string text = read_all(out);
  CHECK(text.find("ring_integral_reduction") != std::string::npos);
  CHECK(text.find("overall: PASS") != std::string::npos);
}

TEST_CASE("help and version exit cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("certify --help") == 0);
}
