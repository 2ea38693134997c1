#pragma once

#include <cstdint>
#include <deque>
#include <map>

#include "lora_ap/ap_auth.hpp"
#include "lora_ap/frame.hpp"

namespace lora_ap {

using DeviceId = std::uint32_t;

struct PendingDownlink {
  DeviceId device = 0;
  SimTime requested{0};
  Bytes payload;
};

struct GatewayState {
  SimTime beacon_period = std::chrono::seconds{15};
  // AP keys provisioned at manufacturing, known to the network server.
  std::map<DeviceId, ApKey> provisioned_keys;
  std::map<DeviceId, TokenState> known_tokens;
  std::deque<PendingDownlink> pending_downlinks;

  bool knows(DeviceId device) const { return known_tokens.contains(device); }
};

// Records a token announcement received in an uplink that started at
// `uplink_start`; the token refers to the reception frame containing it.
// Throws UnknownDeviceError when no key was provisioned for the device.
void gateway_on_announcement(GatewayState& gw, DeviceId device, std::uint64_t token, SimTime uplink_start);

// Frame whose AP MAC is computed from the predicted counter at `now`.
// Throws UnknownDeviceError before the device has announced its token.
ApFrame gateway_send_downlink(const GatewayState& gw, DeviceId device, const Bytes& payload, SimTime now,
                              std::uint16_t preamble_symbols = 8);

}  // namespace lora_ap
