#include "lora_ap/ap_auth.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "lora_ap/errors.hpp"

namespace lora_ap {

struct ApMacGenerator::Impl {
  struct CtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx{EVP_CIPHER_CTX_new()};
};

ApMacGenerator::ApMacGenerator(const ApKey& key) : impl_(std::make_unique<Impl>()) {
  if (!impl_->ctx || EVP_EncryptInit_ex(impl_->ctx.get(), EVP_aes_128_ecb(), nullptr, key.data(), nullptr) != 1)
    throw std::runtime_error("AES-128 key setup failed");
  EVP_CIPHER_CTX_set_padding(impl_->ctx.get(), 0);
}

ApMacGenerator::~ApMacGenerator() = default;
ApMacGenerator::ApMacGenerator(ApMacGenerator&&) noexcept = default;
ApMacGenerator& ApMacGenerator::operator=(ApMacGenerator&&) noexcept = default;

ApMac ApMacGenerator::compute(std::uint64_t token) const {
  std::array<std::uint8_t, 16> block{};
  for (int i = 0; i < 8; ++i) block[i] = static_cast<std::uint8_t>(token >> (8 * i));

  std::array<std::uint8_t, 16> cipher{};
  int len = 0;
  // ECB with padding disabled keeps no state between blocks, so the context
  // can be reused without re-initialization.
  if (EVP_EncryptUpdate(impl_->ctx.get(), cipher.data(), &len, block.data(), 16) != 1 || len != 16)
    throw std::runtime_error("AES-128 block encryption failed");

  ApMac mac;
  std::copy(cipher.begin() + 12, cipher.end(), mac.begin());
  return mac;
}

bool ApMacGenerator::verify(const ApMac& received, std::uint64_t token) const {
  const ApMac expected = compute(token);
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) diff |= static_cast<std::uint8_t>(expected[i] ^ received[i]);
  return diff == 0;
}

ApMac compute_ap_mac(std::uint64_t token, const ApKey& key) { return ApMacGenerator(key).compute(token); }

MacVerdict verify_ap_mac(const ApMac& received, std::uint64_t token, const ApKey& key) {
  return ApMacGenerator(key).verify(received, token) ? MacVerdict::accept : MacVerdict::reject;
}

std::uint64_t predict_frame_counter(const TokenState& known, SimTime target_time) {
  if (known.frame_duration <= SimTime::zero()) throw std::invalid_argument("frame_duration must be positive");
  if (target_time < known.origin_time)
    throw TimeBeforeOriginError("target time " + format_seconds(target_time) + " s precedes token origin " +
                                format_seconds(known.origin_time) + " s");
  const auto elapsed_frames = static_cast<std::uint64_t>((target_time - known.origin_time) / known.frame_duration);
  return known.token + elapsed_frames;  // unsigned wrap
}

std::uint64_t generate_boot_token(const BootTokenSeed& seed) {
  if (seed.mode == BootTokenSeed::Mode::manufactured) return seed.value;
  std::mt19937_64 rng(seed.value);
  return rng();
}

bool token_announcement_due(const TokenState&, SimTime now, SimTime retransmit_interval, SimTime last_sent) {
  if (retransmit_interval <= SimTime::zero()) throw std::invalid_argument("retransmit_interval must be positive");
  return now - last_sent >= retransmit_interval;
}

Bytes encode_token_announcement(std::uint64_t token) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(token >> (8 * i));
  return out;
}

std::optional<std::uint64_t> decode_token_announcement(std::span<const std::uint8_t> payload) {
  if (payload.size() != 8) return std::nullopt;
  std::uint64_t token = 0;
  for (int i = 0; i < 8; ++i) token |= static_cast<std::uint64_t>(payload[i]) << (8 * i);
  return token;
}

}  // namespace lora_ap
