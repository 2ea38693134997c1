#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t u64() { return engine_(); }

  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  bool coin() { return (engine_() & 1) != 0; }

  std::vector<std::uint8_t> bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(engine_());
    return out;
  }

  template <class Array>
  Array array() {
    Array a{};
    for (auto& b : a) b = static_cast<std::uint8_t>(engine_());
    return a;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gen
