#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "lora_ap/adversary.hpp"
#include "lora_ap/device.hpp"
#include "lora_ap/energy.hpp"

namespace lora_ap {

struct DownlinkRequest {
  SimTime time{0};
  Bytes payload;

  friend bool operator==(const DownlinkRequest&, const DownlinkRequest&) = default;
};

struct ScenarioConfig {
  SimTime horizon = std::chrono::hours{24};
  DeviceConfig device;
  EnergyParams energy;
  AttackerConfig attacker;
  std::vector<DownlinkRequest> gateway_downlink_schedule;
  std::uint64_t rng_seed = 1;
  double sample_rate_hz = 10000.0;

  // Throws ConfigError.
  void validate() const;
};

// Sets --ap on|off consistently: device flag and attacker frame layout.
void set_ap_enabled(ScenarioConfig& cfg, bool enabled);

// Line-oriented `key = value` format with dotted section keys; `#` starts a
// comment. Unknown keys and malformed values throw ScenarioParseError with the
// line number. See docs/scenario-format.md.
ScenarioConfig parse_scenario(std::istream& in, const std::string& source_name = "<input>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Renders every field in the same format; parse_scenario reads it back.
std::string to_scenario_text(const ScenarioConfig& cfg);

}  // namespace lora_ap
