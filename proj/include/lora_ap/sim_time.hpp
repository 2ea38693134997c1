#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>

namespace lora_ap {

// Virtual clock unit. Every LoRa symbol duration for SF7..12 at 125/250/500 kHz
// is a multiple of 4 us, so airtimes are exact in this unit.
using SimTime = std::chrono::microseconds;

inline constexpr SimTime kSecond = std::chrono::seconds{1};
inline constexpr SimTime kHour = std::chrono::hours{1};
inline constexpr SimTime kDay = std::chrono::hours{24};
inline constexpr SimTime kYear = std::chrono::hours{24 * 365};

inline SimTime from_seconds(double s) {
  return SimTime{static_cast<SimTime::rep>(std::llround(s * 1e6))};
}

inline double to_seconds(SimTime t) { return static_cast<double>(t.count()) / 1e6; }

// Fixed-point rendering ("12.345678") so traces are byte-identical across runs.
std::string format_seconds(SimTime t);

}  // namespace lora_ap
