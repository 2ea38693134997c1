// Regenerates tests/vectors/ap_mac_vectors.txt from the reference AES:
//   make_vectors > tests/vectors/ap_mac_vectors.txt

#include <cstdio>
#include <random>

#include "reference_aes.hpp"

int main() {
  ref_aes::Block zero{}, ones, counting;
  ones.fill(0xff);
  for (int i = 0; i < 16; ++i) counting[i] = static_cast<std::uint8_t>(i);

  auto emit = [](const ref_aes::Block& key, std::uint64_t token) {
    for (auto b : key) std::printf("%02x", b);
    std::printf(" %016llx ", static_cast<unsigned long long>(token));
    for (auto b : ref_aes::ap_mac(key, token)) std::printf("%02x", b);
    std::printf("\n");
  };

  std::printf("# key(16B hex) token(u64, big-endian hex) mac(4B hex)\n");
  for (const auto& key : {zero, ones, counting})
    for (std::uint64_t token : {0ULL, 1ULL, 0xffffffffffffffffULL, 0x0123456789abcdefULL}) emit(key, token);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 64; ++i) {
    ref_aes::Block key;
    for (int b = 0; b < 16; b += 8) {
      const std::uint64_t r = rng();
      for (int j = 0; j < 8; ++j) key[b + j] = static_cast<std::uint8_t>(r >> (8 * j));
    }
    emit(key, rng());
  }
}
