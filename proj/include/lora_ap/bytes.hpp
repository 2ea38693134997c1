#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lora_ap {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> data);

// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

// Classic 16-bytes-per-row dump with offsets, used for golden-layout tests
// and debugging.
std::string hex_dump(std::span<const std::uint8_t> data);

}  // namespace lora_ap
