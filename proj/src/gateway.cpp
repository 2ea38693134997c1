#include "lora_ap/gateway.hpp"

#include <string>

#include "lora_ap/device.hpp"
#include "lora_ap/errors.hpp"

namespace lora_ap {

void gateway_on_announcement(GatewayState& gw, DeviceId device, std::uint64_t token, SimTime uplink_start) {
  auto key = gw.provisioned_keys.find(device);
  if (key == gw.provisioned_keys.end())
    throw UnknownDeviceError("no AP key provisioned for device " + std::to_string(device));
  TokenState ts;
  ts.token = token;
  ts.shared_key = key->second;
  ts.frame_duration = gw.beacon_period;
  ts.origin_time = gw.beacon_period * (uplink_start / gw.beacon_period);
  gw.known_tokens[device] = ts;
}

ApFrame gateway_send_downlink(const GatewayState& gw, DeviceId device, const Bytes& payload, SimTime now,
                              std::uint16_t preamble_symbols) {
  auto it = gw.known_tokens.find(device);
  if (it == gw.known_tokens.end())
    throw UnknownDeviceError("no token known for device " + std::to_string(device) + "; downlink deferred");
  const TokenState& ts = it->second;

  ApFrame f;
  f.preamble_symbols = preamble_symbols;
  f.ap_mac = compute_ap_mac(predict_frame_counter(ts, now), ts.shared_key);
  f.header = lorawan_header(device, 0, 1);
  f.payload = payload;
  f.payload.insert(f.payload.end(), kLorawanMicSize, 0x00);
  return f;
}

}  // namespace lora_ap
