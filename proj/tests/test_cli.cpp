// End-to-end checks of the workbench binary: spec files in, CSV/bundles out,
// documented exit codes, cache hits byte-identical.

#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"

#ifndef MINMOD_CLI_PATH
#define MINMOD_CLI_PATH "minmod"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void shell(const std::string& cmd) {
  if (std::system(cmd.c_str()) != 0) {}  // scratch-dir plumbing; ignore status
}

RunResult run_cli(const std::string& args) {
  const std::string dir = "cli_scratch";
  shell("mkdir -p " + dir);
  const std::string out_f = dir + "/stdout.txt";
  const std::string err_f = dir + "/stderr.txt";
  const std::string cmd = std::string(MINMOD_CLI_PATH) + " " + args + " > " +
                          out_f + " 2> " + err_f;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_f);
  r.err = slurp(err_f);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("cli: profile emits the fixed header and the requested grid") {
  write_file("cli_scratch_spec.json",
             R"({"kind":"explicit","zeros":[1.0,4.0,9.0]})");
  auto r = run_cli("profile --spec cli_scratch_spec.json --from 0 --to 2 "
                   "--points-per-decade 8");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line1, line2;
  std::getline(is, line1);
  std::getline(is, line2);
  CHECK(line1 == "# schema: minmod-profile-csv-v1");
  CHECK(line2 == "log_r,log_M,log_m,eps,k,log_M_over_sqrt_r");
  CHECK(count_lines(r.out) == 2 + 16);  // comment + header + 16 samples
}

TEST_CASE("cli: profile log_M column matches an independent oracle") {
  // cube zeros as an unbounded counting family
  write_file("cli_scratch_cube.json",
             R"({"kind":"regular","eps":{"kind":"constant","eps":0.16666666666666666},)"
             R"("representation":"analytic"})");
  auto r = run_cli(
      "profile --spec cli_scratch_cube.json --from 5.85 --to 5.95 "
      "--points-per-decade 20");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line, last;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'l') last = line;
  std::istringstream row(last);
  std::string cell;
  std::getline(row, cell, ',');
  const double lr = std::stod(cell);  // the emitted (possibly jittered) radius
  std::getline(row, cell, ',');
  const double log_M = std::stod(cell);
  CHECK(log_M ==
        doctest::Approx(oracle::log_max_cube_zeros(std::exp(lr))).epsilon(1e-7));
}

TEST_CASE("cli: malformed specs exit with code 2 and name the field") {
  write_file("cli_scratch_bad.json", R"({"kind":"explicit","zeros":[-3.0]})");
  auto r = run_cli("profile --spec cli_scratch_bad.json --from 0 --to 1");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("zeros") != std::string::npos);
}

TEST_CASE("cli: cache hits return byte-identical output") {
  write_file("cli_scratch_spec.json",
             R"({"kind":"explicit","zeros":[1.0,4.0,9.0]})");
  shell("rm -rf cli_scratch_cache");
  const std::string args =
      "profile --spec cli_scratch_spec.json --from 0 --to 2 "
      "--points-per-decade 8 --cache-dir cli_scratch_cache";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(second.err.find("cache: hit") != std::string::npos);
}

TEST_CASE("cli: verify suites pass and corrupted bundles are caught") {
  write_file("cli_scratch_spec.json",
             R"({"kind":"explicit","zeros":[1.0,4.0,9.0]})");
  auto ok = run_cli(
      "verify --spec cli_scratch_spec.json --suite all --from 0.2 --to 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS sandwich") != std::string::npos);
  CHECK(ok.out.find("PASS beurling") != std::string::npos);
  CHECK(ok.out.find("PASS angular") != std::string::npos);
  CHECK(ok.out.find("PASS trap") != std::string::npos);

  // produce a cached profile bundle, then corrupt one emitted number
  shell("rm -rf cli_scratch_cache");
  auto made = run_cli(
      "profile --spec cli_scratch_spec.json --from 0 --to 2 "
      "--points-per-decade 8 --cache-dir cli_scratch_cache");
  REQUIRE(made.exit_code == 0);
  shell(
      "f=$(ls cli_scratch_cache/*.json); sed -i 's/log_r,log_M/log_r ,log_M/' $f; "
      "cp $f cli_scratch_bundle.json");
  auto bad = run_cli(
      "verify --spec cli_scratch_spec.json --suite sandwich --from 0.2 --to 2 "
      "--bundle cli_scratch_bundle.json");
  CHECK(bad.exit_code == 4);
  CHECK(bad.out.find("FAIL bundle-consistency") != std::string::npos);

  // empty suite name is a usage error
  auto usage = run_cli(
      "verify --spec cli_scratch_spec.json --suite nope --from 0.2 --to 2");
  CHECK(usage.exit_code == 2);
}

TEST_CASE("cli: construct emits a loadable spec and the band table") {
  auto r = run_cli(
      "construct --kind bands-minimal-type --p 10 --seed-log-a 1 "
      "--seed-log-b 2 --bands 4 --emit-spec cli_scratch_bands.json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# schema: minmod-bands-csv-v1") != std::string::npos);
  CHECK(r.err.find("overflow horizon") != std::string::npos);

  // emitted spec loads and realizes
  auto r2 = run_cli(
      "mtilde --spec cli_scratch_bands.json --from 0.6 --to 2 --points 5");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("# schema: minmod-mtilde-csv-v1") != std::string::npos);
}

TEST_CASE("cli: orbits and criterion reports") {
  write_file("cli_scratch_one.json", R"({"kind":"explicit","zeros":[1.0]})");
  auto r = run_cli(
      "orbit --spec cli_scratch_one.json --starts 0.47712125471966244 "
      "--map min --budget 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# schema: minmod-orbit-csv-v1") != std::string::npos);

  write_file("cli_scratch_cube.json",
             R"({"kind":"regular","eps":{"kind":"constant","eps":0.16666666666666666},)"
             R"("representation":"analytic"})");
  auto r2 = run_cli(
      "criterion --spec cli_scratch_cube.json --radii 6,8 "
      "--out cli_scratch_crit.csv");
  CHECK(r2.exit_code == 0);
  const std::string csv = slurp("cli_scratch_crit.csv");
  CHECK(csv.find("# schema: minmod-criterion-csv-v1") != std::string::npos);
  // r = 1e6: no witness (margin ~0.69); r = 1e8: witness
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  CHECK(line.find(",0,nan,") != std::string::npos);
  std::getline(is, line);
  CHECK(line.find(",1,") != std::string::npos);
}
