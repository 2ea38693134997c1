#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gen.hpp"
#include "lora_ap/ap_auth.hpp"
#include "lora_ap/errors.hpp"
#include "lora_ap/vectors.hpp"
#include "oracles.hpp"
#include "reference_aes.hpp"

using namespace lora_ap;

namespace {

ApMac oracle_mac(const ApKey& key, std::uint64_t token) {
  const auto m = ref_aes::ap_mac(key, token);
  return {m[0], m[1], m[2], m[3]};
}

TokenState state(std::uint64_t token, std::int64_t origin_s = 0) {
  TokenState s;
  s.token = token;
  s.origin_time = std::chrono::seconds{origin_s};
  return s;
}

}  // namespace

TEST_CASE("reference AES matches the FIPS-197 example") {
  ref_aes::Block key, pt;
  for (int i = 0; i < 16; ++i) {
    key[i] = static_cast<std::uint8_t>(i);
    pt[i] = static_cast<std::uint8_t>(0x11 * i);
  }
  CHECK(to_hex(ref_aes::encrypt(key, pt)) == "69c4e0d86a7b0430d8cdb78070b4c55a");
  CHECK(to_hex(ref_aes::encrypt({}, {})) == "66e94bd4ef8a2c3b884cfa59ca342b2e");
}

TEST_CASE("token 0 under the zero key") {
  const ApKey zero{};
  const ApMac expected = oracle_mac(zero, 0);
  CHECK(to_hex(expected) == "ca342b2e");
  CHECK(compute_ap_mac(0, zero) == expected);
}

TEST_CASE("MAC agrees with reference AES on random inputs") {
  gen::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto key = rng.array<ApKey>();
    const std::uint64_t token = rng.u64();
    REQUIRE(compute_ap_mac(token, key) == oracle_mac(key, token));
  }
}

TEST_CASE("generator reuse gives the same MACs as one-shot calls") {
  gen::Rng rng(4);
  const auto key = rng.array<ApKey>();
  ApMacGenerator g(key);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t t = rng.u64();
    REQUIRE(g.compute(t) == compute_ap_mac(t, key));
    REQUIRE(g.compute(t) == g.compute(t));
  }
  ApMacGenerator moved(std::move(g));
  CHECK(moved.compute(9) == compute_ap_mac(9, key));
}

TEST_CASE("golden vectors match implementation and oracle") {
  std::ifstream in(VECTORS_DIR "/ap_mac_vectors.txt");
  REQUIRE(in);
  const auto vectors = read_vectors(in);
  REQUIRE(vectors.size() >= 64);
  CHECK(check_vectors(vectors).empty());
  for (const auto& v : vectors) REQUIRE(oracle_mac(v.key, v.token) == v.mac);
}

TEST_CASE("vector file format") {
  std::stringstream ss;
  const auto vs = generate_vectors(5, 1);
  write_vectors(ss, vs);
  CHECK(read_vectors(ss) == vs);

  std::istringstream bad("00 11 22\n");
  CHECK_THROWS_WITH_AS(read_vectors(bad), doctest::Contains("line 1"), std::runtime_error);

  std::istringstream comments("# only a comment\n\n");
  CHECK(read_vectors(comments).empty());

  auto corrupted = vs;
  corrupted[2].mac[0] ^= 1;
  CHECK(check_vectors(corrupted) == std::vector<std::size_t>{2});
}

TEST_CASE("neighbouring counters give different MACs") {
  gen::Rng rng(5);
  const auto key = rng.array<ApKey>();
  const ApMacGenerator g(key);
  int collisions = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t k = rng.u64();
    if (g.compute(k) == g.compute(k + 1)) ++collisions;
  }
  CHECK(collisions == 0);
}

TEST_CASE("verify accepts its own MAC and rejects the neighbour's") {
  gen::Rng rng(6);
  for (int i = 0; i < 2000; ++i) {
    const auto key = rng.array<ApKey>();
    const std::uint64_t k = rng.u64();
    REQUIRE(verify_ap_mac(compute_ap_mac(k, key), k, key) == MacVerdict::accept);
    REQUIRE(verify_ap_mac(compute_ap_mac(k + 1, key), k, key) == MacVerdict::reject);
  }
}

TEST_CASE("verify rejects every single-byte corruption") {
  const ApKey key = gen::Rng(7).array<ApKey>();
  const ApMac good = compute_ap_mac(42, key);
  for (std::size_t i = 0; i < 4; ++i)
    for (int bit = 0; bit < 8; ++bit) {
      ApMac m = good;
      m[i] ^= static_cast<std::uint8_t>(1 << bit);
      REQUIRE(verify_ap_mac(m, 42, key) == MacVerdict::reject);
    }
}

TEST_CASE("random MAC forgeries") {
  gen::Rng rng(8);
  const auto key = rng.array<ApKey>();
  const ApMacGenerator g(key);
  int accepted = 0;
  for (int i = 0; i < 1000000; ++i) {
    const std::uint64_t token = rng.u64();
    if (g.verify(rng.array<ApMac>(), token)) ++accepted;
  }
  CHECK(accepted <= 3);
}

TEST_CASE("frame counter prediction examples") {
  const SimTime P = std::chrono::seconds{15};
  CHECK(predict_frame_counter(state(100), std::chrono::seconds{150}) == 110);
  CHECK(predict_frame_counter(state(100), SimTime::zero()) == 100);
  CHECK(predict_frame_counter(state(100), P - SimTime{1}) == 100);
  CHECK(predict_frame_counter(state(100), P) == 101);
  CHECK(predict_frame_counter(state(UINT64_MAX), P) == 0);
  CHECK(predict_frame_counter(state(UINT64_MAX - 1), 3 * P) == 1);
  CHECK_THROWS_AS(predict_frame_counter(state(5, 30), std::chrono::seconds{29}), TimeBeforeOriginError);
}

TEST_CASE("prediction agrees with stepping frame by frame") {
  gen::Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    TokenState s = state(rng.coin() ? rng.u64() : UINT64_MAX - static_cast<std::uint64_t>(rng.range(0, 50)));
    s.frame_duration = SimTime{rng.range(1, 60'000'000)};
    s.origin_time = SimTime{rng.range(0, 1'000'000'000)};
    const SimTime target = s.origin_time + SimTime{rng.range(0, 500 * s.frame_duration.count())};
    REQUIRE(predict_frame_counter(s, target) ==
            oracle::counter_by_stepping(s.token, s.origin_time.count(), s.frame_duration.count(), target.count()));
  }
}

TEST_CASE("boot token") {
  CHECK(generate_boot_token(BootTokenSeed::manufactured(42)) == 42);
  CHECK(generate_boot_token(BootTokenSeed::random(1)) == generate_boot_token(BootTokenSeed::random(1)));
  CHECK(generate_boot_token(BootTokenSeed::random(0)) == std::mt19937_64(0)());

  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 2000; ++s) seen.insert(generate_boot_token(BootTokenSeed::random(s)));
  CHECK(seen.size() == 2000);
}

TEST_CASE("token announcement due") {
  const TokenState s;
  const SimTime day = kDay;
  const SimTime t0 = std::chrono::hours{5};
  CHECK_FALSE(token_announcement_due(s, t0, day, t0));
  CHECK(token_announcement_due(s, t0 + day, day, t0));
  CHECK_FALSE(token_announcement_due(s, t0 + std::chrono::hours{23}, day, t0));
  CHECK(token_announcement_due(s, t0 + day + SimTime{1}, day, t0));
}

TEST_CASE("token announcement payload") {
  const Bytes p = encode_token_announcement(0x0102030405060708ULL);
  CHECK(to_hex(p) == "0807060504030201");
  CHECK(decode_token_announcement(p) == 0x0102030405060708ULL);
  CHECK_FALSE(decode_token_announcement(Bytes(7)).has_value());
  gen::Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t t = rng.u64();
    REQUIRE(decode_token_announcement(encode_token_announcement(t)) == t);
  }
}

TEST_CASE("only four ciphertext bytes reach the frame") {
  const ApFrame f;
  CHECK(sizeof(f.ap_mac) == 4);
  const ApKey key{};
  const auto full = ref_aes::encrypt(key, {});
  const ApMac mac = compute_ap_mac(0, key);
  CHECK(std::equal(mac.begin(), mac.end(), full.begin() + 12));
}
