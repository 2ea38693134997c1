#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>

#include "lora_ap/bytes.hpp"

namespace lora_ap {

inline constexpr std::uint8_t kDefaultSyncWord = 0x34;

using ApMac = std::array<std::uint8_t, 4>;

// On-air frame as defined by LoRaWAN: preamble, sync word, header, payload, CRC.
struct LegacyFrame {
  std::uint16_t preamble_symbols = 8;
  std::uint8_t sync_word = kDefaultSyncWord;
  Bytes header;
  Bytes payload;

  friend bool operator==(const LegacyFrame&, const LegacyFrame&) = default;
};

// Frame with the 4-byte authentication MAC right after the sync word, so a
// receiver can reject it before the header and payload arrive.
struct ApFrame {
  std::uint16_t preamble_symbols = 8;
  std::uint8_t sync_word = kDefaultSyncWord;
  ApMac ap_mac{};
  Bytes header;
  Bytes payload;

  friend bool operator==(const ApFrame&, const ApFrame&) = default;
};

using Frame = std::variant<LegacyFrame, ApFrame>;

enum class FrameLayout { legacy, ap };

FrameLayout layout_of(const Frame& frame);

// Bytes the modem counts as PHY payload (header + payload; the AP MAC is
// accounted for separately by the airtime calculation).
std::size_t phy_payload_size(const Frame& frame);

// CRC-16/CCITT, polynomial 0x1021, init 0x0000, no reflection.
std::uint16_t crc16_ccitt(std::span<const std::uint8_t> data);

// Layout (see docs/frame-format.md):
//   preamble_symbols u16le | sync u8 | [ap_mac 4B] | header_len u8 | header |
//   payload_len u8 | payload | crc u16be
// The CRC covers header_len through the last payload byte.
// Throws CodecError{payload_too_long} if payload or header+payload exceed 255 bytes.
Bytes encode_frame(const Frame& frame);

// Inverse of encode_frame. Throws CodecError{truncated_frame, crc_mismatch, malformed}.
Frame decode_frame(std::span<const std::uint8_t> bytes, FrameLayout layout);

// Offset of the first payload byte in the encoded form.
std::size_t encoded_payload_offset(const Frame& frame);

// Offset of the AP MAC in an encoded ApFrame.
inline constexpr std::size_t kApMacOffset = 3;

}  // namespace lora_ap
