#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>

#include "lora_ap/frame.hpp"
#include "lora_ap/sim_time.hpp"

namespace lora_ap {

using ApKey = std::array<std::uint8_t, 16>;

// Frame counter shared by device and gateway. `token` is the counter of the
// reception frame starting at `origin_time`; it advances by one per
// `frame_duration`.
struct TokenState {
  std::uint64_t token = 0;
  ApKey shared_key{};
  SimTime frame_duration = std::chrono::seconds{15};
  SimTime origin_time{0};

  friend bool operator==(const TokenState&, const TokenState&) = default;
};

// AES-128 keyed MAC generator. Holds a prepared cipher context so repeated
// MAC computations under one key avoid re-keying.
class ApMacGenerator {
 public:
  explicit ApMacGenerator(const ApKey& key);
  ~ApMacGenerator();
  ApMacGenerator(ApMacGenerator&&) noexcept;
  ApMacGenerator& operator=(ApMacGenerator&&) noexcept;
  ApMacGenerator(const ApMacGenerator&) = delete;
  ApMacGenerator& operator=(const ApMacGenerator&) = delete;

  // Little-endian token in bytes 0..7 of a zero block, one AES-128 block
  // encryption, last 4 ciphertext bytes.
  ApMac compute(std::uint64_t token) const;

  // Constant-shape compare over all 4 bytes.
  bool verify(const ApMac& received, std::uint64_t token) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ApMac compute_ap_mac(std::uint64_t token, const ApKey& key);

enum class MacVerdict { accept, reject };

MacVerdict verify_ap_mac(const ApMac& received, std::uint64_t token, const ApKey& key);

// known.token + floor((target - origin) / frame_duration), modulo 2^64.
// Throws TimeBeforeOriginError when target precedes origin.
std::uint64_t predict_frame_counter(const TokenState& known, SimTime target_time);

// Random tokens come from a seeded 64-bit Mersenne Twister so simulations are
// reproducible; a manufactured token is provisioned per device.
struct BootTokenSeed {
  enum class Mode { random, manufactured } mode = Mode::random;
  std::uint64_t value = 0;  // RNG seed or provisioned token

  static BootTokenSeed random(std::uint64_t seed) { return {Mode::random, seed}; }
  static BootTokenSeed manufactured(std::uint64_t token) { return {Mode::manufactured, token}; }
};

std::uint64_t generate_boot_token(const BootTokenSeed& seed);

// True iff now - last_sent >= retransmit_interval.
bool token_announcement_due(const TokenState& state, SimTime now, SimTime retransmit_interval, SimTime last_sent);

// Token announcement uplink payload: the 8-byte little-endian counter.
Bytes encode_token_announcement(std::uint64_t token);
std::optional<std::uint64_t> decode_token_announcement(std::span<const std::uint8_t> payload);

}  // namespace lora_ap
