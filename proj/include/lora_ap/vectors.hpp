#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "lora_ap/ap_auth.hpp"

namespace lora_ap {

// One golden AP MAC vector.
struct MacVector {
  ApKey key{};
  std::uint64_t token = 0;
  ApMac mac{};

  friend bool operator==(const MacVector&, const MacVector&) = default;
};

// Text format, one vector per line: `<key 32 hex> <token 16 hex> <mac 8 hex>`.
// Blank lines and `#` comments are ignored. Throws std::runtime_error with
// the line number on malformed input.
std::vector<MacVector> read_vectors(std::istream& in);
void write_vectors(std::ostream& out, std::span<const MacVector> vectors);

// Edge-case keys/tokens (zero, all-ones, wrap boundary) followed by `random`
// seeded random pairs, each with the MAC from compute_ap_mac.
std::vector<MacVector> generate_vectors(std::size_t random, std::uint64_t seed);

// Indices of vectors whose stored MAC disagrees with compute_ap_mac.
std::vector<std::size_t> check_vectors(std::span<const MacVector> vectors);

}  // namespace lora_ap
