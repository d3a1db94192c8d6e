// SPDX-License-Identifier: Apache-2.0
#include "fhsim/config.hpp"

#include <cstdio>
#include <sstream>

namespace fhsim {

GroupId ScenarioConfig::group() const {
  GroupId g;
  g.coordinator = EntityId{Role::Msn, 0};
  for (int i = 0; i < n; ++i) g.members.push_back(EntityId{Role::BodySensor, i});
  return g;
}

std::string ScenarioConfig::prefix_of(EntityId smag) const {
  auto it = topology.prefixes.find(smag);
  return it == topology.prefixes.end() ? std::string{} : it->second;
}

EntityId ScenarioConfig::smag_of(EntityId ap) const { return EntityId{Role::Smag, ap.index}; }

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

struct Cursor {
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(line, key, reason); }
};

SimTime duration_value(const Cursor& at, const std::string& value) {
  try {
    return parse_duration(value);
  } catch (const std::exception& e) {
    at.fail(e.what());
  }
}

double double_value(const Cursor& at, const std::string& value) {
  try {
    std::size_t pos = 0;
    double d = std::stod(value, &pos);
    if (pos != value.size()) at.fail("trailing characters in number '" + value + "'");
    return d;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    at.fail("bad number '" + value + "'");
  }
}

std::int64_t int_value(const Cursor& at, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) at.fail("trailing characters in integer '" + value + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    at.fail("bad integer '" + value + "'");
  }
}

bool bool_value(const Cursor& at, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  at.fail("expected true or false, got '" + value + "'");
}

EntityId entity_value(const Cursor& at, const std::string& value) {
  try {
    return parse_entity(value);
  } catch (const std::exception& e) {
    at.fail(e.what());
  }
}

Vec2 vec_value(const Cursor& at, const std::string& value) {
  auto parts = split(value, ',');
  if (parts.size() != 2) at.fail("expected 'x,y', got '" + value + "'");
  return Vec2{double_value(at, parts[0]), double_value(at, parts[1])};
}

std::string fmt_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void apply_scenario_key(ScenarioConfig& cfg, const Cursor& at, const std::string& key,
                        const std::string& value, std::optional<SimTime>& untimely_alias) {
  if (key == "run_id") {
    cfg.run_id = value;
  } else if (key == "protocol") {
    if (value == "pmipv6")
      cfg.protocol = Protocol::Pmipv6;
    else if (value == "fhpmipv6")
      cfg.protocol = Protocol::Fhpmipv6;
    else
      at.fail("expected pmipv6 or fhpmipv6");
  } else if (key == "mode") {
    if (value == "aggregated")
      cfg.mode = SignalingMode::Aggregated;
    else if (value == "per_sensor")
      cfg.mode = SignalingMode::PerSensor;
    else
      at.fail("expected aggregated or per_sensor");
  } else if (key == "n") {
    cfg.n = static_cast<int>(int_value(at, value));
  } else if (key == "aaa_colocated") {
    cfg.aaa_colocated = bool_value(at, value);
  } else if (key == "aaa_accept") {
    cfg.aaa_accept = bool_value(at, value);
  } else if (key == "buffer_cap") {
    if (value == "unbounded")
      cfg.buffer_cap.reset();
    else
      cfg.buffer_cap = int_value(at, value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(int_value(at, value));
  } else if (key == "duration") {
    cfg.duration = duration_value(at, value);
  } else if (key == "trigger") {
    if (value == "scripted")
      cfg.trigger = TriggerKind::Scripted;
    else if (value == "decision")
      cfg.trigger = TriggerKind::Decision;
    else
      at.fail("expected scripted or decision");
  } else if (key == "detach_mode") {
    if (value == "early")
      cfg.detach_mode = DetachMode::Early;
    else if (value == "timely")
      cfg.detach_mode = DetachMode::Timely;
    else
      at.fail("expected early or timely");
  } else if (key == "bootstrap") {
    if (value == "registered")
      cfg.bootstrap = BootstrapKind::Registered;
    else if (value == "attach")
      cfg.bootstrap = BootstrapKind::Attach;
    else
      at.fail("expected registered or attach");
  } else if (key == "detach_at") {
    cfg.detach_at = duration_value(at, value);
  } else if (key == "notify_at") {
    cfg.notify_at = duration_value(at, value);
  } else if (key == "initial_ap") {
    cfg.initial_ap = entity_value(at, value);
  } else if (key == "target_ap") {
    cfg.target_ap = entity_value(at, value);
  } else if (key == "untimely_offset") {
    untimely_alias = duration_value(at, value);
  } else {
    at.fail("unknown key in [scenario]");
  }
}

void apply_delays_key(AnalyticParams& delays, const Cursor& at, const std::string& key,
                      const std::string& value) {
  SimTime t = duration_value(at, value);
  if (key == "d_smag_ap")
    delays.d_smag_ap = t;
  else if (key == "d_mag_mag")
    delays.d_mag_mag = t;
  else if (key == "t_u_pred")
    delays.t_u_pred = t;
  else if (key == "d_s_pbu")
    delays.d_s_pbu = t;
  else if (key == "d_s_pback")
    delays.d_s_pback = t;
  else if (key == "d_s_aaareq")
    delays.d_s_aaareq = t;
  else if (key == "d_s_aaareply")
    delays.d_s_aaareply = t;
  else if (key == "d_l2")
    delays.d_l2 = t;
  else if (key == "d_dhcp")
    delays.d_dhcp = t;
  else
    at.fail("unknown key in [delays]");
}

const std::set<std::string> kLinkCheckKeys = {"smag_ap", "mag_mag", "s_pbu",
                                              "s_pback", "aaareq",  "aaareply"};

void apply_topology_key(TopologyConfig& topo, const Cursor& at, const std::string& key,
                        const std::string& value) {
  if (key == "smags") {
    topo.smags = static_cast<int>(int_value(at, value));
  } else if (key == "data_delay") {
    topo.data_delay = duration_value(at, value);
  } else if (key == "radio_delay") {
    topo.radio_delay = duration_value(at, value);
  } else if (key.rfind("neighbor.", 0) == 0) {
    topo.neighbor_aps[entity_value(at, key.substr(9))] = entity_value(at, value);
  } else if (key.rfind("prefix.", 0) == 0) {
    topo.prefixes[entity_value(at, key.substr(7))] = value;
  } else if (key.rfind("link.", 0) == 0 && kLinkCheckKeys.count(key.substr(5)) > 0) {
    topo.link_checks[key.substr(5)] = duration_value(at, value);
  } else {
    at.fail("unknown key in [topology]");
  }
}

void apply_policy_key(ScenarioConfig& cfg, const Cursor& at, const std::string& key,
                      const std::string& value) {
  if (key == "x_db") {
    cfg.policy.threshold_x_db = double_value(at, value);
  } else if (key == "ra_interval") {
    cfg.policy.ra_interval = duration_value(at, value);
  } else if (key == "registered_prefixes") {
    cfg.policy.registered_prefixes.clear();
    for (const std::string& p : split(value, ',')) {
      if (!p.empty()) cfg.policy.registered_prefixes.insert(p);
    }
  } else if (key == "tx_power_dbm") {
    cfg.signal.tx_power_dbm = double_value(at, value);
  } else if (key == "path_loss_exponent") {
    cfg.signal.path_loss_exponent = double_value(at, value);
  } else if (key == "reference_distance_m") {
    cfg.signal.reference_distance_m = double_value(at, value);
  } else if (key == "noise") {
    if (value == "off")
      cfg.signal.noise_on = false;
    else if (value == "seeded")
      cfg.signal.noise_on = true;
    else
      at.fail("expected off or seeded");
  } else if (key == "noise_stddev_db") {
    cfg.signal.noise_stddev_db = double_value(at, value);
  } else {
    at.fail("unknown key in [policy]");
  }
}

void apply_traffic_key(TrafficConfig& traffic, const Cursor& at, const std::string& key,
                       const std::string& value) {
  if (key == "inter_packet_interval")
    traffic.inter_packet_interval = duration_value(at, value);
  else if (key == "start")
    traffic.start = duration_value(at, value);
  else if (key == "stop")
    traffic.stop = duration_value(at, value);
  else
    at.fail("unknown key in [traffic]");
}

void apply_timeline_key(MobilityTimeline& timeline, const Cursor& at, const std::string& key,
                        const std::string& value) {
  if (key == "waypoint") {
    auto sep = value.find(':');
    if (sep == std::string::npos) at.fail("expected '<time>:<x>,<y>'");
    SimTime t = duration_value(at, trim(value.substr(0, sep)));
    timeline.waypoints.emplace_back(t, vec_value(at, trim(value.substr(sep + 1))));
  } else if (key.rfind("ap_pos.", 0) == 0) {
    timeline.ap_positions[entity_value(at, key.substr(7))] = vec_value(at, value);
  } else {
    at.fail("unknown key in [timeline]");
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::optional<SimTime> untimely_alias;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, line, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "scenario" && section != "delays" && section != "topology" &&
          section != "policy" && section != "traffic" && section != "timeline")
        throw ParseError(line_no, section, "unknown section");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, line, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    Cursor at{line_no, "[" + section + "] " + key};
    if (section.empty()) at.fail("key outside any section");
    if (key.empty()) at.fail("empty key");
    if (section == "scenario")
      apply_scenario_key(cfg, at, key, value, untimely_alias);
    else if (section == "delays")
      apply_delays_key(cfg.delays, at, key, value);
    else if (section == "topology")
      apply_topology_key(cfg.topology, at, key, value);
    else if (section == "policy")
      apply_policy_key(cfg, at, key, value);
    else if (section == "traffic")
      apply_traffic_key(cfg.traffic, at, key, value);
    else if (section == "timeline")
      apply_timeline_key(cfg.timeline, at, key, value);
  }
  if (untimely_alias && *untimely_alias != cfg.delays.t_u_pred)
    throw ValidationError("[scenario] untimely_offset = " +
                          std::to_string(untimely_alias->us) +
                          " disagrees with [delays] t_u_pred = " +
                          std::to_string(cfg.delays.t_u_pred.us));
  validate_config(cfg);
  return cfg;
}

void validate_config(ScenarioConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("[scenario] n: n >= 1 required");
  if (cfg.duration.us <= 0) throw ValidationError("[scenario] duration must be positive");
  if (cfg.topology.smags < 1) throw ValidationError("[topology] smags: at least one gateway");
  if (cfg.buffer_cap && *cfg.buffer_cap < 1)
    throw ValidationError("[scenario] buffer_cap must be a positive integer or unbounded");
  try {
    validate(cfg.delays);
    cfg.policy.check();
    cfg.timeline.check();
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
  cfg.delays.n = cfg.n;

  auto check_ap = [&](const char* what, EntityId ap) {
    if (ap.role != Role::Ap || ap.index < 0 || ap.index >= cfg.topology.smags)
      throw ValidationError(std::string(what) + ": " + entity_name(ap) +
                            " is not a declared AP (topology has " +
                            std::to_string(cfg.topology.smags) + ")");
  };
  check_ap("[scenario] initial_ap", cfg.initial_ap);
  if (cfg.topology.smags > 1) check_ap("[scenario] target_ap", cfg.target_ap);

  // Derived defaults: every gateway knows every AP, one prefix per gateway.
  if (cfg.topology.neighbor_aps.empty()) {
    for (int i = 0; i < cfg.topology.smags; ++i)
      cfg.topology.neighbor_aps[EntityId{Role::Ap, i}] = EntityId{Role::Smag, i};
  }
  for (const auto& [ap, smag] : cfg.topology.neighbor_aps) {
    if (ap.role != Role::Ap || ap.index < 0 || ap.index >= cfg.topology.smags)
      throw ValidationError("[topology] neighbor." + entity_name(ap) + ": undeclared AP");
    if (smag.role != Role::Smag || smag.index < 0 || smag.index >= cfg.topology.smags)
      throw ValidationError("[topology] neighbor." + entity_name(ap) + ": undeclared gateway " +
                            entity_name(smag));
  }
  for (int i = 0; i < cfg.topology.smags; ++i) {
    EntityId smag{Role::Smag, i};
    if (cfg.topology.prefixes.find(smag) == cfg.topology.prefixes.end())
      cfg.topology.prefixes[smag] = "2001:db8:" + std::to_string(i) + "::/64";
  }
  for (const auto& [smag, prefix] : cfg.topology.prefixes) {
    if (smag.role != Role::Smag || smag.index < 0 || smag.index >= cfg.topology.smags)
      throw ValidationError("[topology] prefix." + entity_name(smag) + ": undeclared gateway");
    if (prefix.empty())
      throw ValidationError("[topology] prefix." + entity_name(smag) + ": empty prefix");
  }
  if (cfg.policy.registered_prefixes.empty()) {
    for (const auto& [smag, prefix] : cfg.topology.prefixes)
      cfg.policy.registered_prefixes.insert(prefix);
  }

  // Link restatements must agree with the [delays] symbols they mirror.
  static const std::map<std::string, SimTime AnalyticParams::*> kLinkToDelay = {
      {"smag_ap", &AnalyticParams::d_smag_ap},   {"mag_mag", &AnalyticParams::d_mag_mag},
      {"s_pbu", &AnalyticParams::d_s_pbu},       {"s_pback", &AnalyticParams::d_s_pback},
      {"aaareq", &AnalyticParams::d_s_aaareq},   {"aaareply", &AnalyticParams::d_s_aaareply},
  };
  for (const auto& [name, value] : cfg.topology.link_checks) {
    SimTime expected = cfg.delays.*kLinkToDelay.at(name);
    if (value != expected)
      throw ValidationError("[topology] link." + name + " = " + std::to_string(value.us) +
                            "us disagrees with [delays] d_" +
                            (name == "aaareq" || name == "aaareply" ? "s_" + name : name) + " = " +
                            std::to_string(expected.us) + "us");
  }

  if (cfg.trigger == TriggerKind::Decision) {
    if (cfg.protocol != Protocol::Fhpmipv6)
      throw ValidationError("[scenario] trigger: decision mode requires fhpmipv6");
    if (cfg.policy.ra_interval.us <= 0)
      throw ValidationError("[policy] ra_interval must be positive in decision mode");
    if (cfg.timeline.waypoints.empty())
      throw ValidationError("[timeline] decision mode needs at least one waypoint");
    for (int i = 0; i < cfg.topology.smags; ++i) {
      if (cfg.timeline.ap_positions.find(EntityId{Role::Ap, i}) == cfg.timeline.ap_positions.end())
        throw ValidationError("[timeline] ap_pos.AP" + std::to_string(i) + " missing");
    }
  } else {
    const bool wants_handover =
        cfg.protocol == Protocol::Pmipv6 || cfg.detach_mode == DetachMode::Early;
    if (wants_handover && cfg.detach_at.us == 0 && cfg.notify_at.us == 0) {
      // A scripted run with no trigger times simply has no handover.
    }
    if (cfg.protocol == Protocol::Fhpmipv6 && cfg.detach_mode == DetachMode::Timely &&
        cfg.detach_at.us > 0)
      throw ValidationError("[scenario] detach_at is not used with detach_mode = timely");
  }
  if (cfg.traffic.stop < cfg.traffic.start)
    throw ValidationError("[traffic] stop precedes start");
  if (cfg.traffic.inter_packet_interval.us <= 0)
    throw ValidationError("[traffic] inter_packet_interval must be positive");
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "run_id = " << cfg.run_id << "\n";
  out << "protocol = " << protocol_name(cfg.protocol) << "\n";
  out << "mode = " << mode_name(cfg.mode) << "\n";
  out << "n = " << cfg.n << "\n";
  out << "aaa_colocated = " << (cfg.aaa_colocated ? "true" : "false") << "\n";
  out << "aaa_accept = " << (cfg.aaa_accept ? "true" : "false") << "\n";
  out << "buffer_cap = "
      << (cfg.buffer_cap ? std::to_string(*cfg.buffer_cap) : std::string("unbounded")) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "duration = " << format_duration(cfg.duration) << "\n";
  out << "trigger = " << (cfg.trigger == TriggerKind::Scripted ? "scripted" : "decision") << "\n";
  out << "detach_mode = " << (cfg.detach_mode == DetachMode::Early ? "early" : "timely") << "\n";
  out << "bootstrap = "
      << (cfg.bootstrap == BootstrapKind::Registered ? "registered" : "attach") << "\n";
  out << "detach_at = " << format_duration(cfg.detach_at) << "\n";
  out << "notify_at = " << format_duration(cfg.notify_at) << "\n";
  out << "initial_ap = " << entity_name(cfg.initial_ap) << "\n";
  out << "target_ap = " << entity_name(cfg.target_ap) << "\n";
  out << "\n[delays]\n";
  out << "d_smag_ap = " << format_duration(cfg.delays.d_smag_ap) << "\n";
  out << "d_mag_mag = " << format_duration(cfg.delays.d_mag_mag) << "\n";
  out << "t_u_pred = " << format_duration(cfg.delays.t_u_pred) << "\n";
  out << "d_s_pbu = " << format_duration(cfg.delays.d_s_pbu) << "\n";
  out << "d_s_pback = " << format_duration(cfg.delays.d_s_pback) << "\n";
  out << "d_s_aaareq = " << format_duration(cfg.delays.d_s_aaareq) << "\n";
  out << "d_s_aaareply = " << format_duration(cfg.delays.d_s_aaareply) << "\n";
  out << "d_l2 = " << format_duration(cfg.delays.d_l2) << "\n";
  out << "d_dhcp = " << format_duration(cfg.delays.d_dhcp) << "\n";
  out << "\n[topology]\n";
  out << "smags = " << cfg.topology.smags << "\n";
  out << "data_delay = " << format_duration(cfg.topology.data_delay) << "\n";
  out << "radio_delay = " << format_duration(cfg.topology.radio_delay) << "\n";
  for (const auto& [ap, smag] : cfg.topology.neighbor_aps)
    out << "neighbor." << entity_name(ap) << " = " << entity_name(smag) << "\n";
  for (const auto& [smag, prefix] : cfg.topology.prefixes)
    out << "prefix." << entity_name(smag) << " = " << prefix << "\n";
  for (const auto& [name, value] : cfg.topology.link_checks)
    out << "link." << name << " = " << format_duration(value) << "\n";
  out << "\n[policy]\n";
  out << "x_db = " << fmt_double(cfg.policy.threshold_x_db) << "\n";
  out << "ra_interval = " << format_duration(cfg.policy.ra_interval) << "\n";
  if (!cfg.policy.registered_prefixes.empty()) {
    out << "registered_prefixes = ";
    bool first = true;
    for (const std::string& p : cfg.policy.registered_prefixes) {
      if (!first) out << ",";
      out << p;
      first = false;
    }
    out << "\n";
  }
  out << "tx_power_dbm = " << fmt_double(cfg.signal.tx_power_dbm) << "\n";
  out << "path_loss_exponent = " << fmt_double(cfg.signal.path_loss_exponent) << "\n";
  out << "reference_distance_m = " << fmt_double(cfg.signal.reference_distance_m) << "\n";
  out << "noise = " << (cfg.signal.noise_on ? "seeded" : "off") << "\n";
  out << "noise_stddev_db = " << fmt_double(cfg.signal.noise_stddev_db) << "\n";
  out << "\n[traffic]\n";
  out << "inter_packet_interval = " << format_duration(cfg.traffic.inter_packet_interval) << "\n";
  out << "start = " << format_duration(cfg.traffic.start) << "\n";
  out << "stop = " << format_duration(cfg.traffic.stop) << "\n";
  out << "\n[timeline]\n";
  for (const auto& [t, p] : cfg.timeline.waypoints)
    out << "waypoint = " << format_duration(t) << ":" << fmt_double(p.x) << "," << fmt_double(p.y)
        << "\n";
  for (const auto& [ap, p] : cfg.timeline.ap_positions)
    out << "ap_pos." << entity_name(ap) << " = " << fmt_double(p.x) << "," << fmt_double(p.y)
        << "\n";
  return out.str();
}

}  // namespace fhsim
