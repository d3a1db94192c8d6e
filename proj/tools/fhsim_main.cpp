// SPDX-License-Identifier: Apache-2.0
//
// fhsim - deterministic FHPMIPv6 / PMIPv6 handover simulator for mobile
// 6LoWPAN sensor groups, with an analytic latency/loss oracle.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fhsim/analytics.hpp"
#include "fhsim/config.hpp"
#include "fhsim/scenario.hpp"
#include "fhsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitCheckFailed = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fhsim::ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SimulateArgs {
  std::string config_path;
  std::string out_dir;
  bool check = false;
  std::optional<std::int64_t> seed;
  std::optional<std::string> protocol;
};

int cmd_simulate(const SimulateArgs& args) {
  fhsim::ScenarioConfig cfg = fhsim::parse_config(slurp(args.config_path));
  if (args.seed) cfg.seed = static_cast<std::uint64_t>(*args.seed);
  if (args.protocol) {
    if (*args.protocol == "pmipv6")
      cfg.protocol = fhsim::Protocol::Pmipv6;
    else if (*args.protocol == "fhpmipv6")
      cfg.protocol = fhsim::Protocol::Fhpmipv6;
    else
      throw fhsim::ValidationError("--protocol: expected pmipv6 or fhpmipv6");
    fhsim::validate_config(cfg);
  }
  fhsim::ScenarioResult result = fhsim::run_scenario(cfg);
  fhsim::Report report = fhsim::write_outputs(cfg, result, args.out_dir);
  std::cout << "handovers=" << result.metrics.records.size()
            << " emissions=" << result.metrics.emissions.size() << " trace_records="
            << result.trace.size() << "\n";
  for (const fhsim::ReportRow& row : report.rows) {
    std::cout << "handover latency_us=" << row.sim_latency.us << " loss=" << row.sim_loss
              << " oracle_latency_us=" << row.oracle_latency.us << " pass="
              << (row.pass ? "true" : "false") << "\n";
  }
  if (args.check && !report.all_pass) {
    std::cerr << "oracle comparison failed (see report.csv)\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

struct AnalyticArgs {
  fhsim::AnalyticParams p;
  bool aaa_colocated = false;
  std::string mode = "per_sensor";
};

int cmd_analytic(const AnalyticArgs& args) {
  fhsim::validate(args.p);
  const fhsim::SignalingMode mode = args.mode == "aggregated"
                                        ? fhsim::SignalingMode::Aggregated
                                        : fhsim::SignalingMode::PerSensor;
  std::cout << "ho_pl_us=" << fhsim::ho_pl(args.p).us << "\n";
  std::cout << "avg_ho_pl_us=" << fhsim::avg_ho_pl(args.p).str() << "\n";
  std::cout << "ho_lat_us=" << fhsim::ho_lat(args.p, args.aaa_colocated).us << "\n";
  std::cout << "avg_ho_lat_us=" << fhsim::avg_ho_lat(args.p, args.aaa_colocated).str() << "\n";
  for (fhsim::Protocol protocol : {fhsim::Protocol::Fhpmipv6, fhsim::Protocol::Pmipv6}) {
    auto counts = fhsim::signaling_cost(protocol, args.p.n, mode, args.aaa_colocated);
    std::cout << "signaling." << fhsim::protocol_name(protocol) << "="
              << fhsim::signaling_total(counts);
    for (const auto& [tag, count] : counts) std::cout << " " << tag << ":" << count;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& grid_path, const std::string& out_dir) {
  fhsim::SweepSpec spec = fhsim::parse_sweep(slurp(grid_path));
  fhsim::SweepResult result = fhsim::run_sweep(spec);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = std::filesystem::path(out_dir) / "sweep.csv";
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << fhsim::sweep_csv(result);
  }
  std::filesystem::rename(tmp, path);
  std::cout << "cells=" << result.rows.size() << " all_pass="
            << (result.all_pass ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FHPMIPv6 fast-handover simulator for mobile 6LoWPAN sensor groups"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario");
  simulate->add_option("--config", sim.config_path, "scenario config file")->required();
  simulate->add_option("--out", sim.out_dir, "output directory")->required();
  simulate->add_flag("--check", sim.check, "exit 3 if measurements diverge from the oracle");
  std::int64_t seed_opt = 0;
  CLI::Option* seed_flag = simulate->add_option("--seed", seed_opt, "override [scenario] seed");
  std::string protocol_opt;
  CLI::Option* protocol_flag =
      simulate->add_option("--protocol", protocol_opt, "override [scenario] protocol");

  AnalyticArgs an;
  CLI::App* analytic = app.add_subcommand("analytic", "print oracle values for parameters");
  analytic->add_option("--n", an.p.n, "body sensors")->required();
  auto add_delay = [&](const char* flag, fhsim::SimTime& slot) {
    analytic->add_option_function<std::string>(
        flag, [&slot](const std::string& v) { slot = fhsim::parse_duration(v); },
        "duration (us|ms|s)");
  };
  add_delay("--d-smag-ap", an.p.d_smag_ap);
  add_delay("--d-mag-mag", an.p.d_mag_mag);
  add_delay("--t-u-pred", an.p.t_u_pred);
  add_delay("--d-s-pbu", an.p.d_s_pbu);
  add_delay("--d-s-pback", an.p.d_s_pback);
  add_delay("--d-s-aaareq", an.p.d_s_aaareq);
  add_delay("--d-s-aaareply", an.p.d_s_aaareply);
  add_delay("--d-l2", an.p.d_l2);
  add_delay("--d-dhcp", an.p.d_dhcp);
  analytic->add_flag("--aaa-colocated", an.aaa_colocated, "AAA function inside the SLMA");
  analytic->add_option("--mode", an.mode, "aggregated|per_sensor");

  std::string grid_path;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
  sweep->add_option("--grid", grid_path, "grid spec file")->required();
  sweep->add_option("--out", sweep_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      if (*seed_flag) sim.seed = seed_opt;
      if (*protocol_flag) sim.protocol = protocol_opt;
      return cmd_simulate(sim);
    }
    if (analytic->parsed()) return cmd_analytic(an);
    if (sweep->parsed()) return cmd_sweep(grid_path, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
