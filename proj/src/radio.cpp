#include "lora_ap/radio.hpp"

#include <algorithm>

#include "lora_ap/errors.hpp"

namespace lora_ap {

std::string to_string(CodingRate cr) { return "4/" + std::to_string(4 + static_cast<int>(cr)); }

CodingRate parse_coding_rate(const std::string& text) {
  if (text == "4/5") return CodingRate::cr4_5;
  if (text == "4/6") return CodingRate::cr4_6;
  if (text == "4/7") return CodingRate::cr4_7;
  if (text == "4/8") return CodingRate::cr4_8;
  throw ConfigError("unknown coding rate '" + text + "' (expected 4/5..4/8)");
}

void RadioParams::validate() const {
  if (spreading_factor < 7 || spreading_factor > 12)
    throw ConfigError("spreading_factor must be in [7, 12], got " + std::to_string(spreading_factor));
  if (bandwidth_hz != 125000 && bandwidth_hz != 250000 && bandwidth_hz != 500000)
    throw ConfigError("bandwidth_hz must be 125000, 250000 or 500000, got " + std::to_string(bandwidth_hz));
  if (preamble_symbols < 1) throw ConfigError("preamble_symbols must be >= 1");
  auto cr = static_cast<int>(coding_rate);
  if (cr < 1 || cr > 4) throw ConfigError("invalid coding rate");
}

SimTime symbol_time(const RadioParams& params) {
  // 2^SF / BW; exact because BW divides 10^6 * 2^SF for the allowed values.
  return SimTime{(std::int64_t{1} << params.spreading_factor) * 1000000 / params.bandwidth_hz};
}

SimTime airtime(const RadioParams& params, std::size_t payload_len, bool ap_enabled) {
  const std::int64_t pl = static_cast<std::int64_t>(payload_len + (ap_enabled ? kApMacSize : 0));
  const std::int64_t sf = params.spreading_factor;
  const std::int64_t ih = params.explicit_header ? 0 : 1;
  const std::int64_t de = params.low_data_rate_optimize ? 1 : 0;
  const std::int64_t crc = 1;
  const std::int64_t cr = static_cast<std::int64_t>(params.coding_rate);

  const std::int64_t num = 8 * pl - 4 * sf + 28 + 16 * crc - 20 * ih;
  const std::int64_t den = 4 * (sf - 2 * de);
  const std::int64_t blocks = num > 0 ? (num + den - 1) / den : 0;
  const std::int64_t payload_symbols = 8 + std::max<std::int64_t>(blocks * (cr + 4), 0);

  // preamble + 4.25 symbols, counted in quarter symbols to stay integral
  const std::int64_t quarter_symbols = 4 * (params.preamble_symbols + payload_symbols) + 17;
  return SimTime{quarter_symbols * symbol_time(params).count() / 4};
}

SimTime ap_decision_airtime(const RadioParams& params) { return airtime(params, 0, true); }

double time_on_air(const RadioParams& params, std::size_t payload_len, bool ap_enabled) {
  return to_seconds(airtime(params, payload_len, ap_enabled));
}

double time_to_ap_decision(const RadioParams& params) { return to_seconds(ap_decision_airtime(params)); }

}  // namespace lora_ap
