// SPDX-License-Identifier: Apache-2.0
//
// Exercises the installed binary end to end: exit codes, output files, the
// analytic printer and a small sweep. Takes the binary path as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fhsim/config.hpp"
#include "test_util.hpp"

namespace {

std::string g_binary;
std::filesystem::path g_dir;

int run_cli(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " >" + (g_dir / "stdout.txt").string() +
                          " 2>" + (g_dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("help exits zero") { CHECK(run_cli("--help") == 0); }

TEST_CASE("missing and malformed configs exit two") {
  CHECK(run_cli("simulate --config " + (g_dir / "nope.ini").string() + " --out " +
                (g_dir / "o").string()) == 2);
  write_file(g_dir / "bad.ini", "[scenario]\nn = 0\nduration = 1s\n");
  CHECK(run_cli("simulate --config " + (g_dir / "bad.ini").string() + " --out " +
                (g_dir / "o").string()) == 2);
  write_file(g_dir / "junk.ini", "[delays]\nd_s_pbu = banana\n");
  CHECK(run_cli("simulate --config " + (g_dir / "junk.ini").string() + " --out " +
                (g_dir / "o").string()) == 2);
}

TEST_CASE("a passing scenario writes all three outputs and honors --check") {
  fhsim::ScenarioConfig cfg = fhsim::testutil::base_config();
  cfg.detach_mode = fhsim::DetachMode::Timely;
  cfg.detach_at = fhsim::SimTime{};
  cfg.notify_at = fhsim::msec(100);
  cfg.delays.t_u_pred = fhsim::SimTime{};
  write_file(g_dir / "ok.ini", fhsim::serialize_config(cfg));

  const auto out = g_dir / "run1";
  CHECK(run_cli("simulate --config " + (g_dir / "ok.ini").string() + " --out " + out.string() +
                " --check") == 0);
  CHECK(std::filesystem::exists(out / "metrics.csv"));
  CHECK(std::filesystem::exists(out / "trace.jsonl"));
  CHECK(std::filesystem::exists(out / "report.csv"));
  CHECK(!std::filesystem::exists(out / "metrics.csv.tmp"));

  const std::string report = slurp(out / "report.csv");
  CHECK(report.find("run_id,protocol,mode,n,timely,sim_latency_us,oracle_latency_us,sim_loss,"
                    "oracle_window_us,signaling_total,pass") == 0);
  CHECK(report.find("true\n") != std::string::npos);
}

TEST_CASE("an oracle-violating scenario exits three under --check") {
  fhsim::ScenarioConfig cfg = fhsim::testutil::base_config();
  cfg.detach_mode = fhsim::DetachMode::Timely;
  cfg.detach_at = fhsim::SimTime{};
  cfg.notify_at = fhsim::msec(100);
  cfg.delays.t_u_pred = fhsim::SimTime{};
  cfg.buffer_cap = 1;  // tail drops at the gateway: loss where none is predicted
  write_file(g_dir / "cap1.ini", fhsim::serialize_config(cfg));
  CHECK(run_cli("simulate --config " + (g_dir / "cap1.ini").string() + " --out " +
                (g_dir / "run2").string() + " --check") == 3);
  // Without --check the run completes and reports.
  CHECK(run_cli("simulate --config " + (g_dir / "cap1.ini").string() + " --out " +
                (g_dir / "run2").string()) == 0);
}

TEST_CASE("simulate is byte-deterministic across invocations") {
  fhsim::ScenarioConfig cfg = fhsim::testutil::base_config();
  write_file(g_dir / "det.ini", fhsim::serialize_config(cfg));
  CHECK(run_cli("simulate --config " + (g_dir / "det.ini").string() + " --out " +
                (g_dir / "d1").string()) == 0);
  CHECK(run_cli("simulate --config " + (g_dir / "det.ini").string() + " --out " +
                (g_dir / "d2").string()) == 0);
  CHECK(slurp(g_dir / "d1/trace.jsonl") == slurp(g_dir / "d2/trace.jsonl"));
  CHECK(slurp(g_dir / "d1/metrics.csv") == slurp(g_dir / "d2/metrics.csv"));
  // Seed override with noise off changes nothing.
  CHECK(run_cli("simulate --config " + (g_dir / "det.ini").string() + " --out " +
                (g_dir / "d3").string() + " --seed 777") == 0);
  CHECK(slurp(g_dir / "d1/trace.jsonl") == slurp(g_dir / "d3/trace.jsonl"));
}

TEST_CASE("protocol override flag beats the config file") {
  fhsim::ScenarioConfig cfg = fhsim::testutil::base_config();
  write_file(g_dir / "p.ini", fhsim::serialize_config(cfg));
  CHECK(run_cli("simulate --config " + (g_dir / "p.ini").string() + " --out " +
                (g_dir / "p1").string() + " --protocol pmipv6") == 0);
  CHECK(slurp(g_dir / "p1/metrics.csv").find("pmipv6") != std::string::npos);
  CHECK(run_cli("simulate --config " + (g_dir / "p.ini").string() + " --out " +
                (g_dir / "p2").string() + " --protocol carrier_pigeon") == 2);
}

TEST_CASE("analytic prints the oracle values") {
  CHECK(run_cli("analytic --n 3 --d-smag-ap 5ms --d-mag-mag 20ms --t-u-pred 10ms "
                "--d-s-pbu 4ms --d-s-pback 4ms --d-l2 6ms --aaa-colocated") == 0);
  const std::string out = slurp(g_dir / "stdout.txt");
  CHECK(out.find("ho_pl_us=45000") != std::string::npos);
  CHECK(out.find("avg_ho_pl_us=15000") != std::string::npos);
  CHECK(out.find("ho_lat_us=30000") != std::string::npos);
  CHECK(out.find("avg_ho_lat_us=10000") != std::string::npos);
}

TEST_CASE("sweep walks the grid in lexicographic order") {
  fhsim::ScenarioConfig cfg = fhsim::testutil::base_config();
  std::string grid_text = fhsim::serialize_config(cfg);
  grid_text += "\n[grid]\nn = 1,3\nt_u_pred = 5ms,10ms\n";
  write_file(g_dir / "grid.ini", grid_text);
  CHECK(run_cli("sweep --grid " + (g_dir / "grid.ini").string() + " --out " +
                (g_dir / "sw").string()) == 0);
  const std::string csv = slurp(g_dir / "sw/sweep.csv");
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> cells;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) cells.push_back(line.substr(0, line.find(',')));
  REQUIRE(cells.size() == 4);
  // Nested loops in declared key order: n outermost, then t_u_pred.
  CHECK(cells[0].find("n=1;") == 0);
  CHECK(cells[0].find("t_u_pred=5000") != std::string::npos);
  CHECK(cells[1].find("n=1;") == 0);
  CHECK(cells[1].find("t_u_pred=10000") != std::string::npos);
  CHECK(cells[2].find("n=3;") == 0);
  CHECK(cells[2].find("t_u_pred=5000") != std::string::npos);
  CHECK(cells[3].find("n=3;") == 0);
  CHECK(cells[3].find("t_u_pred=10000") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <path-to-fhsim-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "fhsim_cli_test";
  std::filesystem::remove_all(g_dir);
  std::filesystem::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
