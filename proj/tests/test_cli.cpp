#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / "flash_cli_tests" / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path dir = fresh_dir("streams_" + std::to_string(counter++));
  fs::path out_p = dir / "stdout.txt";
  fs::path err_p = dir / "stderr.txt";
  std::string cmd = std::string(FLASHSIM_BIN) + " " + args + " > " +
                    out_p.string() + " 2> " + err_p.string();
  int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = read_file(out_p);
  res.err = read_file(err_p);
  return res;
}

std::string bundled(const std::string& name) {
  return std::string(FLASH_SCENARIO_DIR) + "/" + name;
}

fs::path write_scenario(const std::string& tag, const std::string& content) {
  fs::path p = fresh_dir("scn_" + tag) / (tag + ".scenario");
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

const std::string kLumpedBase =
    "model = lumped\n"
    "[dimensional]\n"
    "rho = 6050\n"
    "c_heat = 600\n"
    "k_thermal = 2.7\n"
    "emissivity = 0.7\n"
    "h_side = 10\n"
    "h_electrode = 10\n"
    "arrhenius_A = 9.3e5\n"
    "activation_E = 171000\n"
    "gas_constant = 8.31\n"
    "length_L = 0.010\n"
    "radius_R = 0.0015\n"
    "T_furnace = 1110\n"
    "V0 = 600\n"
    "I0 = 0.5\n";

}  // namespace

TEST_CASE("nondim prints the dimensionless groups as CSV") {
  CliResult r = run_cli("nondim --config " + bundled("table1.scenario"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("name,value\n", 0) == 0);
  CHECK(r.out.find("delta,0.14999999999999999\n") != std::string::npos);
  CHECK(r.out.find("t0,3.0249999999999999\n") != std::string::npos);
  CHECK(r.out.find("T0,1110\n") != std::string::npos);
}

TEST_CASE("nondim emits parseable JSON on request") {
  CliResult r = run_cli("nondim --format json --config " +
                        bundled("table1.scenario"));
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(std::strtod(j["delta"].get<std::string>().c_str(), nullptr) == 0.15);
  CHECK(std::strtod(j["curlyI"].get<std::string>().c_str(), nullptr) ==
        doctest::Approx(285.204007).epsilon(1e-9));
}

TEST_CASE("validation problems exit with status 1") {
  CHECK(run_cli("nondim --config /does/not/exist").exit_code == 1);
  fs::path bad = write_scenario("badkey", kLumpedBase + "[solver]\nbogus = 1\n");
  CliResult r = run_cli("nondim --config " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("bogus") != std::string::npos);
  CHECK(run_cli("crit --model radial").exit_code == 1);  // no range given
  CHECK(run_cli("crit --model conical --beta-range 0.1:1:3").exit_code == 1);
  CHECK(run_cli("run --no-such-flag").exit_code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("run --help").exit_code == 0);
}

TEST_CASE("run writes the time series and reports a switch on stderr") {
  fs::path dir = fresh_dir("run_ok");
  fs::path scn = write_scenario(
      "switch", kLumpedBase + "[schedule]\nmode = voltage_then_current\n");
  CliResult r = run_cli("run --config " + scn.string() + " --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("switched to current") != std::string::npos);
  std::string csv = read_file(dir / "timeseries.csv");
  CHECK(csv.rfind("t,V,I,P,theta_min,theta_max,control_mode\n", 0) == 0);
  CHECK(csv.find(",current\n") != std::string::npos);
  // Data goes only to files; stdout stays empty.
  CHECK(r.out.empty());
}

TEST_CASE("blow-up terminated run exits with status 3") {
  fs::path dir = fresh_dir("run_blowup");
  fs::path scn = write_scenario(
      "blowup", kLumpedBase + "[schedule]\nmode = voltage_only\n");
  CliResult r = run_cli("run --config " + scn.string() + " --out " +
                        dir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("blow-up") != std::string::npos);
  // The partial time series is still written for post-mortem use.
  CHECK(fs::exists(dir / "timeseries.csv"));
}

TEST_CASE("run serializes JSON with blow-up details when asked") {
  fs::path dir = fresh_dir("run_json");
  fs::path scn = write_scenario(
      "blowup_json", kLumpedBase + "[schedule]\nmode = voltage_only\n");
  CliResult r = run_cli("run --format json --config " + scn.string() +
                        " --out " + dir.string());
  CHECK(r.exit_code == 3);
  json j = json::parse(read_file(dir / "timeseries.json"));
  CHECK(j["blowup"]["detected"].get<bool>());
  CHECK(j["times"].size() > 2);
}

TEST_CASE("run captures requested snapshots") {
  fs::path dir = fresh_dir("run_snaps");
  fs::path scn = write_scenario(
      "snaps", kLumpedBase +
                   "[schedule]\nmode = voltage_then_current\n"
                   "[solver]\nt_end = 10\nsnapshot_times = 0 5 10\n"
                   "[outputs]\nsnapshots = profiles.json\n");
  CliResult r = run_cli("run --config " + scn.string() + " --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  json j = json::parse(read_file(dir / "profiles.json"));
  CHECK(j["profile_snapshots"].size() == 3);
}

TEST_CASE("crit writes the requested critical curve") {
  fs::path dir = fresh_dir("crit_radial");
  CliResult r = run_cli("crit --model radial --beta-range 0.1:10:5 --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  std::string csv = read_file(dir / "critical_curve.csv");
  CHECK(csv.rfind("beta,lambda_c\n", 0) == 0);
  // Five log-spaced points; the middle one is beta = 1.
  CHECK(csv.find("0.57579898302535") != std::string::npos);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 6);
}

TEST_CASE("crit output is byte-stable across invocations") {
  fs::path a = fresh_dir("crit_a");
  fs::path b = fresh_dir("crit_b");
  std::string args = "crit --model axial --alpha-range 0.1:10:7 --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string()).exit_code == 0);
  CHECK(read_file(a / "critical_curve.csv") ==
        read_file(b / "critical_curve.csv"));
}

TEST_CASE("crit covers the high-aspect model with side cooling") {
  fs::path dir = fresh_dir("crit_ha");
  CliResult r = run_cli(
      "crit --model high_aspect --alpha-range 1:10:2 --B 0 --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  std::string csv = read_file(dir / "critical_curve.csv");
  CHECK(csv.rfind("alpha,Lambda_tilde_c\n", 0) == 0);
  CHECK(csv.find("0.63442804") != std::string::npos);
  CHECK(csv.find("3.12317063") != std::string::npos);
}

TEST_CASE("crit emits JSON rows on request") {
  fs::path dir = fresh_dir("crit_json");
  CliResult r = run_cli(
      "crit --model lumped --beta-range 0.1:1:3 --format json --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  json j = json::parse(read_file(dir / "critical_curve.json"));
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  CHECK(j[0].contains("beta"));
  CHECK(j[0].contains("lambda_star"));
}

TEST_CASE("steady prints the branch table for the bundled scenario") {
  fs::path dir = fresh_dir("steady");
  CliResult r = run_cli("steady --config " + bundled("table1.scenario") +
                        " --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("branch,c,b,theta_center,forcing\n", 0) == 0);
  // The bundled operating point is supercritical under voltage control, so
  // only the current-controlled branch exists.
  CHECK(r.out.find("current,") != std::string::npos);
  CHECK(r.out.find("stable,") == std::string::npos);
  CHECK(r.err.find("supercritical") != std::string::npos);
  CHECK(fs::exists(dir / "steady_current.csv"));
  std::string prof = read_file(dir / "steady_current.csv");
  CHECK(prof.rfind("coord,theta\n", 0) == 0);
}

TEST_CASE("regime writes the classification grid and its boundary") {
  fs::path dir = fresh_dir("regime");
  CliResult r = run_cli("regime --config " + bundled("table1.scenario") +
                        " --T-range 1000:1200:3 --E-range 1e4:1e5:4 --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  std::string grid = read_file(dir / "regime.csv");
  std::string boundary = read_file(dir / "regime_boundary.csv");
  CHECK(grid.rfind("T,E,flash\n", 0) == 0);
  CHECK(boundary.rfind("T,E_star\n", 0) == 0);
  int rows = 0;
  for (char ch : boundary)
    if (ch == '\n') ++rows;
  CHECK(rows == 4);  // header + one per temperature
  CHECK(run_cli("regime --config " + bundled("table1.scenario") +
                " --T-range 1200:1000:3 --E-range 1e4:1e5:4 --out " +
                dir.string())
            .exit_code == 1);
}
