#include "lora_ap/bytes.hpp"
#include "lora_ap/sim_time.hpp"

#include <cstdio>
#include <stdexcept>

namespace lora_ap {

namespace {
constexpr char kDigits[] = "0123456789abcdef";

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit in '" + std::string(hex) + "'");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

std::string hex_dump(std::span<const std::uint8_t> data) {
  std::string out;
  char line[16];
  for (std::size_t row = 0; row < data.size(); row += 16) {
    std::snprintf(line, sizeof line, "%04zx:", row);
    out += line;
    for (std::size_t i = row; i < row + 16 && i < data.size(); ++i) {
      out.push_back(' ');
      out.push_back(kDigits[data[i] >> 4]);
      out.push_back(kDigits[data[i] & 0x0f]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_seconds(SimTime t) {
  auto us = t.count();
  bool neg = us < 0;
  if (neg) us = -us;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", neg ? "-" : "", static_cast<long long>(us / 1000000),
                static_cast<long long>(us % 1000000));
  return buf;
}

}  // namespace lora_ap
