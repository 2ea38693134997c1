#include "lora_ap/vectors.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lora_ap/bytes.hpp"

namespace lora_ap {

std::vector<MacVector> read_vectors(std::istream& in) {
  std::vector<MacVector> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string key, token, mac, extra;
    if (!(fields >> key)) continue;
    fields >> token >> mac >> extra;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("vectors line " + std::to_string(line) + ": " + what);
    };
    if (mac.empty() || !extra.empty()) fail("expected '<key> <token> <mac>'");
    MacVector v;
    try {
      const Bytes k = from_hex(key);
      const Bytes t = from_hex(token);
      const Bytes m = from_hex(mac);
      if (k.size() != 16 || t.size() != 8 || m.size() != 4) fail("field sizes must be 16, 8 and 4 bytes");
      std::copy(k.begin(), k.end(), v.key.begin());
      for (std::uint8_t b : t) v.token = (v.token << 8) | b;
      std::copy(m.begin(), m.end(), v.mac.begin());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    out.push_back(v);
  }
  return out;
}

void write_vectors(std::ostream& out, std::span<const MacVector> vectors) {
  out << "# key(16B hex) token(u64, big-endian hex) mac(4B hex)\n";
  for (const auto& v : vectors) {
    Bytes token(8);
    for (int i = 0; i < 8; ++i) token[i] = static_cast<std::uint8_t>(v.token >> (56 - 8 * i));
    out << to_hex(v.key) << ' ' << to_hex(token) << ' ' << to_hex(v.mac) << '\n';
  }
}

std::vector<MacVector> generate_vectors(std::size_t random, std::uint64_t seed) {
  std::vector<MacVector> out;
  ApKey zero{};
  ApKey ones;
  ones.fill(0xff);
  ApKey counting;
  for (std::size_t i = 0; i < counting.size(); ++i) counting[i] = static_cast<std::uint8_t>(i);

  for (const auto& key : {zero, ones, counting})
    for (std::uint64_t token : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{0xffffffffffffffff},
                                std::uint64_t{0x0123456789abcdef}})
      out.push_back({key, token, compute_ap_mac(token, key)});

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random; ++i) {
    MacVector v;
    for (std::size_t b = 0; b < v.key.size(); b += 8) {
      const std::uint64_t r = rng();
      for (int j = 0; j < 8; ++j) v.key[b + j] = static_cast<std::uint8_t>(r >> (8 * j));
    }
    v.token = rng();
    v.mac = compute_ap_mac(v.token, v.key);
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> check_vectors(std::span<const MacVector> vectors) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (compute_ap_mac(vectors[i].token, vectors[i].key) != vectors[i].mac) bad.push_back(i);
  return bad;
}

}  // namespace lora_ap
