#pragma once

#include <optional>
#include <random>

#include "lora_ap/device.hpp"
#include "lora_ap/frame.hpp"
#include "lora_ap/sim_time.hpp"

namespace lora_ap {

enum class AttackStrategy : std::uint8_t { max_payload_flood, random_mac_forgery, silent };

std::string_view to_string(AttackStrategy s);
AttackStrategy parse_attack_strategy(std::string_view text);  // flood | forgery | silent

struct AttackerConfig {
  AttackStrategy strategy = AttackStrategy::silent;
  // FRMPayload bytes; the LoRaWAN header and MIC come on top.
  std::size_t payload_len = kMaxAppPayload;
  // Send time relative to the start of the device's listen window.
  SimTime sync_offset{0};
  SimTime active_from{0};
  SimTime active_to = SimTime::max();
  // Frame layout the attacker transmits.
  FrameLayout layout = FrameLayout::ap;

  void validate() const;
};

// Listen-window timing the attacker has learned by sniffing.
struct DeviceSchedule {
  SimTime beacon_period = std::chrono::seconds{15};
  SimTime first_listen_start{0};

  static DeviceSchedule of(const DeviceConfig& config);
};

struct AttackFrame {
  IncomingFrame frame;  // frame.start == send time
  std::uint64_t window = 0;
};

// Perfectly synchronized attacker: one frame per listen window, sent at
// window start + sync_offset. Flood reuses one MAC drawn at construction;
// forgery draws a fresh uniformly random MAC for every frame.
class Attacker {
 public:
  Attacker(AttackerConfig config, const RadioParams& radio, std::uint64_t seed);

  const AttackerConfig& config() const { return config_; }

  // Next frame whose send time is >= now and inside [active_from, active_to).
  std::optional<AttackFrame> next_attack_frame(const DeviceSchedule& schedule, SimTime now);

 private:
  AttackerConfig config_;
  std::uint16_t preamble_symbols_;
  std::mt19937_64 rng_;
  ApMac flood_mac_{};
  std::uint16_t fcnt_ = 0;

  ApMac random_mac();
};

}  // namespace lora_ap
