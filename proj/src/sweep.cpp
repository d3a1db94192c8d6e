// SPDX-License-Identifier: Apache-2.0
#include "fhsim/sweep.hpp"

#include <sstream>
#include <stdexcept>

#include "fhsim/scenario.hpp"

namespace fhsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
  // Pull the [grid] section out, hand the rest to the config parser.
  std::istringstream in(text);
  std::string line;
  std::string base_text;
  bool in_grid = false;
  int line_no = 0;
  std::vector<std::pair<int, std::string>> grid_lines;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t == "[grid]") {
      in_grid = true;
      continue;
    }
    if (!t.empty() && t.front() == '[') in_grid = false;
    if (in_grid)
      grid_lines.emplace_back(line_no, line);
    else
      base_text += line + "\n";
  }

  SweepSpec spec;
  spec.base = parse_config(base_text);
  for (const auto& [no, raw] : grid_lines) {
    std::string body = raw;
    if (auto hash = body.find('#'); hash != std::string::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(no, body, "expected 'key = value,...'");
    const std::string key = trim(body.substr(0, eq));
    const std::vector<std::string> values = split_list(body.substr(eq + 1));
    if (key == "n") {
      for (const std::string& v : values) spec.n_values.push_back(std::stoi(v));
    } else if (key == "x_db") {
      for (const std::string& v : values) spec.x_values.push_back(std::stod(v));
    } else if (key == "t_u_pred") {
      for (const std::string& v : values) spec.t_u_pred_values.push_back(parse_duration(v));
    } else if (key == "inter_packet_interval") {
      for (const std::string& v : values) spec.interval_values.push_back(parse_duration(v));
    } else if (key == "protocol") {
      for (const std::string& v : values) {
        if (v == "pmipv6")
          spec.protocol_values.push_back(Protocol::Pmipv6);
        else if (v == "fhpmipv6")
          spec.protocol_values.push_back(Protocol::Fhpmipv6);
        else
          throw ParseError(no, "[grid] protocol", "expected pmipv6 or fhpmipv6");
      }
    } else {
      throw ParseError(no, "[grid] " + key, "unknown grid key");
    }
  }
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec) {
  SweepResult result;
  const auto ns = spec.n_values.empty() ? std::vector<int>{spec.base.n} : spec.n_values;
  const auto xs =
      spec.x_values.empty() ? std::vector<double>{spec.base.policy.threshold_x_db} : spec.x_values;
  const auto preds = spec.t_u_pred_values.empty() ? std::vector<SimTime>{spec.base.delays.t_u_pred}
                                                  : spec.t_u_pred_values;
  const auto intervals = spec.interval_values.empty()
                             ? std::vector<SimTime>{spec.base.traffic.inter_packet_interval}
                             : spec.interval_values;
  const auto protocols = spec.protocol_values.empty() ? std::vector<Protocol>{spec.base.protocol}
                                                      : spec.protocol_values;

  for (int n : ns) {
    for (double x : xs) {
      for (SimTime pred : preds) {
        for (SimTime interval : intervals) {
          for (Protocol protocol : protocols) {
            ScenarioConfig cfg = spec.base;
            cfg.n = n;
            cfg.policy.threshold_x_db = x;
            cfg.delays.t_u_pred = pred;
            cfg.traffic.inter_packet_interval = interval;
            cfg.protocol = protocol;
            std::ostringstream cell;
            cell << "n=" << n << ";x=" << x << ";t_u_pred=" << pred.us
                 << ";inter_packet=" << interval.us << ";protocol=" << protocol_name(protocol);
            cfg.run_id = cell.str();
            try {
              validate_config(cfg);
              ScenarioResult run = run_scenario(cfg);
              const Report report = compare(run.metrics, cfg.delays);
              for (const ReportRow& row : report.rows) {
                result.rows.push_back(SweepRow{cell.str(), cfg, row});
                result.all_pass = result.all_pass && row.pass;
              }
              if (report.rows.empty())
                result.rows.push_back(SweepRow{cell.str(), cfg, ReportRow{}});
            } catch (const std::exception& e) {
              throw std::runtime_error("cell " + cell.str() + ": " + e.what());
            }
          }
        }
      }
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "cell_id,protocol,mode,n,timely,sim_latency_us,oracle_latency_us,sim_loss,"
         "oracle_window_us,signaling_total,pass\n";
  for (const SweepRow& row : result.rows) {
    const ReportRow& r = row.report;
    out << row.cell_id << ',' << protocol_name(r.protocol) << ',' << mode_name(r.mode) << ','
        << r.n << ',' << (r.timely ? "true" : "false") << ',' << r.sim_latency.us << ','
        << r.oracle_latency.us << ',' << r.sim_loss << ',' << r.oracle_window.us << ','
        << r.signaling_total << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace fhsim
