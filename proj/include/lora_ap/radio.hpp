#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "lora_ap/sim_time.hpp"

namespace lora_ap {

enum class CodingRate : std::uint8_t { cr4_5 = 1, cr4_6 = 2, cr4_7 = 3, cr4_8 = 4 };

std::string to_string(CodingRate cr);
CodingRate parse_coding_rate(const std::string& text);  // "4/5".."4/8"

// LoRa modem settings. Defaults reproduce a 14 s airtime for a maximum-size
// LoRaWAN frame at SF12.
struct RadioParams {
  int spreading_factor = 12;
  std::int32_t bandwidth_hz = 125000;
  CodingRate coding_rate = CodingRate::cr4_8;
  int preamble_symbols = 8;
  bool low_data_rate_optimize = true;
  bool explicit_header = true;

  // Throws ConfigError when out of range.
  void validate() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

// Largest PHY payload the modem accepts.
inline constexpr std::size_t kMaxPhyPayload = 255;
// Bytes the authentication preamble adds ahead of the PHY payload.
inline constexpr std::size_t kApMacSize = 4;

SimTime symbol_time(const RadioParams& params);

// Airtime of a frame with `payload_len` PHY payload bytes (Semtech SX127x
// formula, payload CRC on). With `ap_enabled` the 4 MAC bytes count as
// payload. Exact in microseconds.
SimTime airtime(const RadioParams& params, std::size_t payload_len, bool ap_enabled);

// Airtime until the AP MAC bytes have been demodulated: preamble, sync and
// header plus 4 bytes. Independent of the payload that follows.
SimTime ap_decision_airtime(const RadioParams& params);

// Same quantities in seconds.
double time_on_air(const RadioParams& params, std::size_t payload_len, bool ap_enabled);
double time_to_ap_decision(const RadioParams& params);

}  // namespace lora_ap
