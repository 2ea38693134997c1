#include "lora_ap/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lora_ap/errors.hpp"

namespace lora_ap {

void ScenarioConfig::validate() const {
  if (horizon <= SimTime::zero()) throw ConfigError("horizon must be > 0");
  if (!(sample_rate_hz > 0)) throw ConfigError("sample_rate_hz must be > 0");
  device.validate();
  energy.validate();
  attacker.validate();
  for (const auto& d : gateway_downlink_schedule) {
    if (d.time < SimTime::zero()) throw ConfigError("downlink time must be >= 0");
    if (d.payload.size() > kMaxAppPayload)
      throw ConfigError("downlink payload must be <= " + std::to_string(kMaxAppPayload) + " bytes");
  }
}

void set_ap_enabled(ScenarioConfig& cfg, bool enabled) {
  cfg.device.ap_enabled = enabled;
  cfg.attacker.layout = enabled ? FrameLayout::ap : FrameLayout::legacy;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Parser {
  const std::string& source;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScenarioParseError(source + ":" + std::to_string(line) + ": " + msg);
  }

  double number(const std::string& v) const {
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) fail("expected a number, got '" + v + "'");
    return out;
  }

  std::uint64_t uinteger(const std::string& v) const {
    std::uint64_t out = 0;
    int base = 10;
    std::string_view digits = v;
    if (digits.starts_with("0x") || digits.starts_with("0X")) {
      base = 16;
      digits.remove_prefix(2);
    }
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out, base);
    if (ec != std::errc{} || p != digits.data() + digits.size() || digits.empty())
      fail("expected an unsigned integer, got '" + v + "'");
    return out;
  }

  SimTime seconds(const std::string& v) const {
    const double s = number(v);
    if (s < -9.2e12 || s > 9.2e12) fail("time value out of range: '" + v + "'");
    return from_seconds(s);
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail("expected a boolean (true/false/on/off), got '" + v + "'");
  }
};

std::string seconds_text(SimTime t) { return format_seconds(t); }

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& source_name) {
  ScenarioConfig cfg;
  Parser p{source_name};
  bool layout_explicit = false;

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"horizon_s", [&](const std::string& v) { cfg.horizon = p.seconds(v); }},
      {"rng_seed", [&](const std::string& v) { cfg.rng_seed = p.uinteger(v); }},
      {"sample_rate_hz", [&](const std::string& v) { cfg.sample_rate_hz = p.number(v); }},

      {"device.beacon_period_s", [&](const std::string& v) { cfg.device.beacon_period = p.seconds(v); }},
      {"device.beacon_phase_s", [&](const std::string& v) { cfg.device.beacon_phase = p.seconds(v); }},
      {"device.listen_window_s", [&](const std::string& v) { cfg.device.listen_window = p.seconds(v); }},
      {"device.ap_enabled", [&](const std::string& v) { cfg.device.ap_enabled = p.boolean(v); }},
      {"device.announce_at_boot", [&](const std::string& v) { cfg.device.announce_at_boot = p.boolean(v); }},
      {"device.ap_verify_time_s", [&](const std::string& v) { cfg.device.ap_verify_time = p.seconds(v); }},
      {"device.mac_tolerance_frames",
       [&](const std::string& v) { cfg.device.mac_tolerance_frames = static_cast<std::uint32_t>(p.uinteger(v)); }},
      {"device.token_retransmit_interval_s",
       [&](const std::string& v) { cfg.device.token_retransmit_interval = p.seconds(v); }},
      {"device.uplink_period_s", [&](const std::string& v) { cfg.device.uplink_period = p.seconds(v); }},
      {"device.uplink_offset_s", [&](const std::string& v) { cfg.device.uplink_offset = p.seconds(v); }},
      {"device.uplink_payload_bytes", [&](const std::string& v) { cfg.device.uplink_payload = p.uinteger(v); }},
      {"device.uplink_airtime_s",
       [&](const std::string& v) {
         if (v == "formula")
           cfg.device.uplink_airtime_override.reset();
         else
           cfg.device.uplink_airtime_override = p.seconds(v);
       }},
      {"device.ap_key",
       [&](const std::string& v) {
         Bytes key;
         try {
           key = from_hex(v);
         } catch (const std::invalid_argument& e) {
           p.fail(e.what());
         }
         if (key.size() != 16) p.fail("device.ap_key must be 16 bytes (32 hex digits)");
         std::copy(key.begin(), key.end(), cfg.device.ap_key.begin());
       }},
      {"device.boot_token",
       [&](const std::string& v) {
         cfg.device.boot_seed = v == "random" ? BootTokenSeed::random(0) : BootTokenSeed::manufactured(p.uinteger(v));
       }},

      {"radio.spreading_factor",
       [&](const std::string& v) { cfg.device.radio.spreading_factor = static_cast<int>(p.uinteger(v)); }},
      {"radio.bandwidth_hz",
       [&](const std::string& v) { cfg.device.radio.bandwidth_hz = static_cast<std::int32_t>(p.uinteger(v)); }},
      {"radio.coding_rate",
       [&](const std::string& v) {
         try {
           cfg.device.radio.coding_rate = parse_coding_rate(v);
         } catch (const ConfigError& e) {
           p.fail(e.what());
         }
       }},
      {"radio.preamble_symbols",
       [&](const std::string& v) { cfg.device.radio.preamble_symbols = static_cast<int>(p.uinteger(v)); }},
      {"radio.low_data_rate_optimize",
       [&](const std::string& v) { cfg.device.radio.low_data_rate_optimize = p.boolean(v); }},
      {"radio.explicit_header", [&](const std::string& v) { cfg.device.radio.explicit_header = p.boolean(v); }},

      {"energy.battery_capacity_ah", [&](const std::string& v) { cfg.energy.battery_capacity_ah = p.number(v); }},
      {"energy.sensor_drain_ah_per_year",
       [&](const std::string& v) { cfg.energy.sensor_drain_ah_per_year = p.number(v); }},
      {"energy.rx_current_ma", [&](const std::string& v) { cfg.energy.rx_current_ma = p.number(v); }},
      {"energy.tx_current_ma", [&](const std::string& v) { cfg.energy.tx_current_ma = p.number(v); }},
      {"energy.sleep_current_ma", [&](const std::string& v) { cfg.energy.sleep_current_ma = p.number(v); }},

      {"attacker.strategy",
       [&](const std::string& v) {
         try {
           cfg.attacker.strategy = parse_attack_strategy(v);
         } catch (const ConfigError& e) {
           p.fail(e.what());
         }
       }},
      {"attacker.payload_bytes", [&](const std::string& v) { cfg.attacker.payload_len = p.uinteger(v); }},
      {"attacker.sync_offset_s", [&](const std::string& v) { cfg.attacker.sync_offset = p.seconds(v); }},
      {"attacker.active_from_s", [&](const std::string& v) { cfg.attacker.active_from = p.seconds(v); }},
      {"attacker.active_to_s",
       [&](const std::string& v) { cfg.attacker.active_to = v == "inf" ? SimTime::max() : p.seconds(v); }},
      {"attacker.layout",
       [&](const std::string& v) {
         if (v == "ap")
           cfg.attacker.layout = FrameLayout::ap;
         else if (v == "legacy")
           cfg.attacker.layout = FrameLayout::legacy;
         else
           p.fail("attacker.layout must be 'ap' or 'legacy'");
         layout_explicit = true;
       }},

      {"gateway.downlink",
       [&](const std::string& v) {
         std::istringstream fields(v);
         std::string t, hex, extra;
         fields >> t >> hex >> extra;
         if (t.empty() || !extra.empty()) p.fail("gateway.downlink expects '<time_s> [hex-payload]'");
         DownlinkRequest d;
         d.time = p.seconds(t);
         try {
           d.payload = from_hex(hex);
         } catch (const std::invalid_argument& e) {
           p.fail(e.what());
         }
         cfg.gateway_downlink_schedule.push_back(std::move(d));
       }},
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) p.fail("expected 'key = value', got '" + text + "'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) p.fail("unknown key '" + key + "'");
    if (value.empty()) p.fail("missing value for '" + key + "'");
    it->second(value);
  }
  if (in.bad()) throw ScenarioParseError(source_name + ": read error");
  if (!layout_explicit) cfg.attacker.layout = cfg.device.ap_enabled ? FrameLayout::ap : FrameLayout::legacy;
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError(path.string() + ": cannot open scenario file");
  return parse_scenario(in, path.string());
}

std::string to_scenario_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  char num[64];
  auto real = [&](double v) {
    std::snprintf(num, sizeof num, "%.17g", v);
    return std::string(num);
  };
  const auto& d = cfg.device;
  const auto& r = d.radio;
  const auto& e = cfg.energy;
  const auto& a = cfg.attacker;
  out << "horizon_s = " << seconds_text(cfg.horizon) << '\n'
      << "rng_seed = " << cfg.rng_seed << '\n'
      << "sample_rate_hz = " << real(cfg.sample_rate_hz) << '\n'
      << "device.beacon_period_s = " << seconds_text(d.beacon_period) << '\n'
      << "device.beacon_phase_s = " << seconds_text(d.beacon_phase) << '\n'
      << "device.listen_window_s = " << seconds_text(d.listen_window) << '\n'
      << "device.ap_enabled = " << (d.ap_enabled ? "true" : "false") << '\n'
      << "device.ap_verify_time_s = " << seconds_text(d.ap_verify_time) << '\n'
      << "device.mac_tolerance_frames = " << d.mac_tolerance_frames << '\n'
      << "device.announce_at_boot = " << (d.announce_at_boot ? "true" : "false") << '\n'
      << "device.token_retransmit_interval_s = " << seconds_text(d.token_retransmit_interval) << '\n'
      << "device.uplink_period_s = " << seconds_text(d.uplink_period) << '\n'
      << "device.uplink_offset_s = " << seconds_text(d.uplink_offset) << '\n'
      << "device.uplink_payload_bytes = " << d.uplink_payload << '\n'
      << "device.uplink_airtime_s = "
      << (d.uplink_airtime_override ? seconds_text(*d.uplink_airtime_override) : std::string("formula")) << '\n'
      << "device.ap_key = " << to_hex(d.ap_key) << '\n'
      << "device.boot_token = "
      << (d.boot_seed.mode == BootTokenSeed::Mode::random ? std::string("random") : std::to_string(d.boot_seed.value))
      << '\n'
      << "radio.spreading_factor = " << r.spreading_factor << '\n'
      << "radio.bandwidth_hz = " << r.bandwidth_hz << '\n'
      << "radio.coding_rate = " << to_string(r.coding_rate) << '\n'
      << "radio.preamble_symbols = " << r.preamble_symbols << '\n'
      << "radio.low_data_rate_optimize = " << (r.low_data_rate_optimize ? "true" : "false") << '\n'
      << "radio.explicit_header = " << (r.explicit_header ? "true" : "false") << '\n'
      << "energy.battery_capacity_ah = " << real(e.battery_capacity_ah) << '\n'
      << "energy.sensor_drain_ah_per_year = " << real(e.sensor_drain_ah_per_year) << '\n'
      << "energy.rx_current_ma = " << real(e.rx_current_ma) << '\n'
      << "energy.tx_current_ma = " << real(e.tx_current_ma) << '\n'
      << "energy.sleep_current_ma = " << real(e.sleep_current_ma) << '\n'
      << "attacker.strategy = " << to_string(a.strategy) << '\n'
      << "attacker.payload_bytes = " << a.payload_len << '\n'
      << "attacker.sync_offset_s = " << seconds_text(a.sync_offset) << '\n'
      << "attacker.active_from_s = " << seconds_text(a.active_from) << '\n'
      << "attacker.active_to_s = " << (a.active_to == SimTime::max() ? std::string("inf") : seconds_text(a.active_to))
      << '\n'
      << "attacker.layout = " << (a.layout == FrameLayout::ap ? "ap" : "legacy") << '\n';
  for (const auto& dl : cfg.gateway_downlink_schedule)
    out << "gateway.downlink = " << seconds_text(dl.time) << ' ' << to_hex(dl.payload) << '\n';
  return out.str();
}

}  // namespace lora_ap
