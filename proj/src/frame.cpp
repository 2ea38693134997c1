#include "lora_ap/frame.hpp"

#include <algorithm>
#include <string>

#include "lora_ap/errors.hpp"
#include "lora_ap/radio.hpp"

namespace lora_ap {

namespace {

struct FrameView {
  std::uint16_t preamble_symbols;
  std::uint8_t sync_word;
  const ApMac* ap_mac;
  const Bytes& header;
  const Bytes& payload;
};

FrameView view_of(const Frame& frame) {
  return std::visit(
      [](const auto& f) -> FrameView {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, ApFrame>)
          return {f.preamble_symbols, f.sync_word, &f.ap_mac, f.header, f.payload};
        else
          return {f.preamble_symbols, f.sync_word, nullptr, f.header, f.payload};
      },
      frame);
}

std::size_t prefix_size(FrameLayout layout) { return 3 + (layout == FrameLayout::ap ? kApMacSize : 0); }

}  // namespace

FrameLayout layout_of(const Frame& frame) {
  return std::holds_alternative<ApFrame>(frame) ? FrameLayout::ap : FrameLayout::legacy;
}

std::size_t phy_payload_size(const Frame& frame) {
  auto v = view_of(frame);
  return v.header.size() + v.payload.size();
}

std::uint16_t crc16_ccitt(std::span<const std::uint8_t> data) {
  std::uint16_t crc = 0x0000;
  for (auto byte : data) {
    crc ^= static_cast<std::uint16_t>(byte) << 8;
    for (int i = 0; i < 8; ++i) crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021) : crc << 1;
  }
  return crc;
}

std::size_t encoded_payload_offset(const Frame& frame) {
  auto v = view_of(frame);
  return prefix_size(layout_of(frame)) + 1 + v.header.size() + 1;
}

Bytes encode_frame(const Frame& frame) {
  auto v = view_of(frame);
  if (v.payload.size() > kMaxPhyPayload)
    throw CodecError(CodecErrorKind::payload_too_long,
                     "payload of " + std::to_string(v.payload.size()) + " bytes exceeds 255");
  if (v.header.size() + v.payload.size() > kMaxPhyPayload)
    throw CodecError(CodecErrorKind::payload_too_long,
                     "header+payload of " + std::to_string(v.header.size() + v.payload.size()) + " bytes exceeds 255");

  Bytes out;
  out.reserve(encoded_payload_offset(frame) + v.payload.size() + 2);
  out.push_back(static_cast<std::uint8_t>(v.preamble_symbols & 0xff));
  out.push_back(static_cast<std::uint8_t>(v.preamble_symbols >> 8));
  out.push_back(v.sync_word);
  if (v.ap_mac) out.insert(out.end(), v.ap_mac->begin(), v.ap_mac->end());

  const std::size_t crc_start = out.size();
  out.push_back(static_cast<std::uint8_t>(v.header.size()));
  out.insert(out.end(), v.header.begin(), v.header.end());
  out.push_back(static_cast<std::uint8_t>(v.payload.size()));
  out.insert(out.end(), v.payload.begin(), v.payload.end());

  auto crc = crc16_ccitt(std::span(out).subspan(crc_start));
  out.push_back(static_cast<std::uint8_t>(crc >> 8));
  out.push_back(static_cast<std::uint8_t>(crc & 0xff));
  return out;
}

Frame decode_frame(std::span<const std::uint8_t> bytes, FrameLayout layout) {
  const std::size_t prefix = prefix_size(layout);
  // prefix + header_len + payload_len + crc
  if (bytes.size() < prefix + 4)
    throw CodecError(CodecErrorKind::truncated_frame, "frame of " + std::to_string(bytes.size()) + " bytes is truncated");

  std::size_t pos = prefix;
  const std::size_t header_len = bytes[pos++];
  if (bytes.size() < pos + header_len + 1 + 2)
    throw CodecError(CodecErrorKind::truncated_frame, "frame truncated inside header");
  auto header = bytes.subspan(pos, header_len);
  pos += header_len;
  const std::size_t payload_len = bytes[pos++];
  if (bytes.size() < pos + payload_len + 2)
    throw CodecError(CodecErrorKind::truncated_frame, "frame truncated inside payload");
  auto payload = bytes.subspan(pos, payload_len);
  pos += payload_len;
  if (bytes.size() != pos + 2)
    throw CodecError(CodecErrorKind::malformed, "trailing bytes after CRC");
  if (header_len + payload_len > kMaxPhyPayload)
    throw CodecError(CodecErrorKind::malformed, "header+payload exceeds 255 bytes");

  const std::uint16_t expected = crc16_ccitt(bytes.subspan(prefix, pos - prefix));
  const std::uint16_t got = static_cast<std::uint16_t>((bytes[pos] << 8) | bytes[pos + 1]);
  if (expected != got) throw CodecError(CodecErrorKind::crc_mismatch, "CRC mismatch");

  const auto preamble = static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
  const auto sync = bytes[2];
  if (layout == FrameLayout::ap) {
    ApFrame f;
    f.preamble_symbols = preamble;
    f.sync_word = sync;
    std::copy_n(bytes.begin() + 3, kApMacSize, f.ap_mac.begin());
    f.header.assign(header.begin(), header.end());
    f.payload.assign(payload.begin(), payload.end());
    return f;
  }
  LegacyFrame f;
  f.preamble_symbols = preamble;
  f.sync_word = sync;
  f.header.assign(header.begin(), header.end());
  f.payload.assign(payload.begin(), payload.end());
  return f;
}

}  // namespace lora_ap
