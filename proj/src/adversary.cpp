#include "lora_ap/adversary.hpp"

#include <string>

#include "lora_ap/errors.hpp"

namespace lora_ap {

std::string_view to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::max_payload_flood:
      return "flood";
    case AttackStrategy::random_mac_forgery:
      return "forgery";
    case AttackStrategy::silent:
      return "silent";
  }
  return "unknown";
}

AttackStrategy parse_attack_strategy(std::string_view text) {
  if (text == "flood" || text == "max_payload_flood") return AttackStrategy::max_payload_flood;
  if (text == "forgery" || text == "random_mac_forgery") return AttackStrategy::random_mac_forgery;
  if (text == "silent") return AttackStrategy::silent;
  throw ConfigError("unknown attack strategy '" + std::string(text) + "' (expected flood, forgery or silent)");
}

void AttackerConfig::validate() const {
  if (payload_len > kMaxAppPayload)
    throw ConfigError("attacker payload_len must be <= " + std::to_string(kMaxAppPayload) +
                      " (255-byte PHY limit minus LoRaWAN overhead)");
  if (active_to < active_from) throw ConfigError("attacker active_to precedes active_from");
}

DeviceSchedule DeviceSchedule::of(const DeviceConfig& config) {
  return {config.beacon_period, config.listen_start(0)};
}

Attacker::Attacker(AttackerConfig config, const RadioParams& radio, std::uint64_t seed)
    : config_(config), preamble_symbols_(static_cast<std::uint16_t>(radio.preamble_symbols)), rng_(seed) {
  config_.validate();
  flood_mac_ = random_mac();
}

ApMac Attacker::random_mac() {
  const std::uint64_t r = rng_();
  ApMac mac;
  for (int i = 0; i < 4; ++i) mac[i] = static_cast<std::uint8_t>(r >> (8 * i));
  return mac;
}

std::optional<AttackFrame> Attacker::next_attack_frame(const DeviceSchedule& schedule, SimTime now) {
  if (config_.strategy == AttackStrategy::silent) return std::nullopt;

  const SimTime earliest = std::max(now, config_.active_from);
  const SimTime first = schedule.first_listen_start + config_.sync_offset;
  std::int64_t window = 0;
  if (earliest > first) window = (earliest - first + schedule.beacon_period - SimTime{1}) / schedule.beacon_period;
  const SimTime send = first + schedule.beacon_period * window;
  if (send >= config_.active_to) return std::nullopt;

  Bytes header = lorawan_header(0x26011f2a, fcnt_++, 1);
  Bytes payload(config_.payload_len + kLorawanMicSize);
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng_());

  AttackFrame out;
  out.window = static_cast<std::uint64_t>(window);
  out.frame.sender = Sender::attacker;
  out.frame.start = send;
  if (config_.layout == FrameLayout::ap) {
    ApFrame f;
    f.preamble_symbols = preamble_symbols_;
    f.ap_mac = config_.strategy == AttackStrategy::random_mac_forgery ? random_mac() : flood_mac_;
    f.header = std::move(header);
    f.payload = std::move(payload);
    out.frame.frame = std::move(f);
  } else {
    LegacyFrame f;
    f.preamble_symbols = preamble_symbols_;
    f.header = std::move(header);
    f.payload = std::move(payload);
    out.frame.frame = std::move(f);
  }
  return out;
}

}  // namespace lora_ap
