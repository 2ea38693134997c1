#include <doctest.h>

#include "gen.hpp"
#include "lora_ap/errors.hpp"
#include "lora_ap/frame.hpp"
#include "lora_ap/radio.hpp"
#include "oracles.hpp"

using namespace lora_ap;

namespace {

Frame random_frame(gen::Rng& rng) {
  const std::size_t header_len = static_cast<std::size_t>(rng.range(0, 32));
  const std::size_t payload_len = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(255 - header_len)));
  const auto preamble = static_cast<std::uint16_t>(rng.range(6, 65535));
  const auto sync = static_cast<std::uint8_t>(rng.u64());
  if (rng.coin()) return LegacyFrame{preamble, sync, rng.bytes(header_len), rng.bytes(payload_len)};
  return ApFrame{preamble, sync, rng.array<ApMac>(), rng.bytes(header_len), rng.bytes(payload_len)};
}

CodecErrorKind decode_error(std::span<const std::uint8_t> bytes, FrameLayout layout) {
  try {
    decode_frame(bytes, layout);
  } catch (const CodecError& e) {
    return e.kind();
  }
  FAIL("decode_frame accepted invalid input");
  return CodecErrorKind::malformed;
}

RadioParams sf7() {
  RadioParams p;
  p.spreading_factor = 7;
  p.low_data_rate_optimize = false;
  return p;
}

}  // namespace

TEST_CASE("crc16 check value") {
  const std::string s = "123456789";
  const Bytes b(s.begin(), s.end());
  CHECK(crc16_ccitt(b) == 0x31C3);
  CHECK(crc16_ccitt(b) == oracle::crc16(b));
  CHECK(crc16_ccitt({}) == 0);
}

TEST_CASE("crc16 agrees with table-driven oracle") {
  gen::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto b = rng.bytes(static_cast<std::size_t>(rng.range(0, 300)));
    REQUIRE(crc16_ccitt(b) == oracle::crc16(b));
  }
}

TEST_CASE("empty AP frame has the MAC right after the sync word") {
  const ApFrame f{8, 0x34, {0, 0, 0, 0}, {}, {}};
  const Bytes enc = encode_frame(f);
  // preamble 0x0008 LE, sync, MAC, header_len, payload_len, CRC over {0, 0}
  CHECK(to_hex(enc) == "0800340000000000000000");
  CHECK(enc[kApMacOffset - 1] == 0x34);

  const ApFrame g{8, 0x34, {0xde, 0xad, 0xbe, 0xef}, {}, {}};
  const Bytes enc2 = encode_frame(g);
  CHECK(Bytes(enc2.begin() + kApMacOffset, enc2.begin() + kApMacOffset + 4) == Bytes{0xde, 0xad, 0xbe, 0xef});
}

TEST_CASE("golden legacy frame bytes") {
  const LegacyFrame f{8, 0x34, {0x40}, {0x01, 0x02, 0x03}};
  const Bytes enc = encode_frame(f);
  Bytes covered{0x01, 0x40, 0x03, 0x01, 0x02, 0x03};
  const std::uint16_t crc = oracle::crc16(covered);
  Bytes expected{0x08, 0x00, 0x34};
  expected.insert(expected.end(), covered.begin(), covered.end());
  expected.push_back(static_cast<std::uint8_t>(crc >> 8));
  expected.push_back(static_cast<std::uint8_t>(crc & 0xff));
  CHECK(enc == expected);
  CHECK(hex_dump(enc).rfind("0000:", 0) == 0);
}

TEST_CASE("242-byte legacy frame length") {
  const LegacyFrame f{8, 0x34, {}, Bytes(242, 0xaa)};
  const Bytes enc = encode_frame(f);
  CHECK(enc.size() == encoded_payload_offset(f) + 242 + 2);
  CHECK(enc.size() == 249);
}

TEST_CASE("round trip of random frames, both layouts") {
  gen::Rng rng(20240611);
  int legacy = 0, ap = 0;
  for (int i = 0; i < 1000; ++i) {
    const Frame f = random_frame(rng);
    const Bytes enc = encode_frame(f);
    const Frame back = decode_frame(enc, layout_of(f));
    REQUIRE(back == f);
    (layout_of(f) == FrameLayout::ap ? ap : legacy)++;
  }
  CHECK(legacy > 400);
  CHECK(ap > 400);
}

TEST_CASE("AP layout adds exactly four bytes") {
  gen::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto header = rng.bytes(static_cast<std::size_t>(rng.range(0, 13)));
    const auto payload = rng.bytes(static_cast<std::size_t>(rng.range(0, 242)));
    const LegacyFrame l{8, 0x34, header, payload};
    const ApFrame a{8, 0x34, rng.array<ApMac>(), header, payload};
    REQUIRE(encode_frame(a).size() - encode_frame(l).size() == 4);
    REQUIRE(phy_payload_size(a) == phy_payload_size(l));
  }
}

TEST_CASE("single bit flips are caught") {
  gen::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    Frame f = random_frame(rng);
    Bytes enc = encode_frame(f);
    // Flip a payload bit; lengths stay intact.
    const std::size_t payload_at = encoded_payload_offset(f);
    const std::size_t payload_len = enc.size() - payload_at - 2;
    if (payload_len == 0) continue;
    const std::size_t at = payload_at + static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(payload_len) - 1));
    enc[at] ^= static_cast<std::uint8_t>(1u << rng.range(0, 7));
    REQUIRE(decode_error(enc, layout_of(f)) == CodecErrorKind::crc_mismatch);
  }
}

TEST_CASE("decode errors") {
  CHECK(decode_error({}, FrameLayout::legacy) == CodecErrorKind::truncated_frame);
  CHECK(decode_error({}, FrameLayout::ap) == CodecErrorKind::truncated_frame);

  const LegacyFrame f{8, 0x34, {1, 2}, {3, 4, 5}};
  const Bytes enc = encode_frame(f);
  for (std::size_t n = 0; n < enc.size(); ++n)
    CHECK(decode_error(std::span(enc).first(n), FrameLayout::legacy) == CodecErrorKind::truncated_frame);

  Bytes trailing = enc;
  trailing.push_back(0);
  CHECK(decode_error(trailing, FrameLayout::legacy) == CodecErrorKind::malformed);

  // A legacy frame read as AP is misparsed and must not decode silently.
  CHECK_THROWS_AS(decode_frame(enc, FrameLayout::ap), CodecError);
}

TEST_CASE("payload too long") {
  auto kind_of = [](const Frame& f) {
    try {
      encode_frame(f);
    } catch (const CodecError& e) {
      return e.kind();
    }
    return CodecErrorKind::malformed;
  };
  CHECK(kind_of(LegacyFrame{8, 0x34, {}, Bytes(256)}) == CodecErrorKind::payload_too_long);
  CHECK(kind_of(ApFrame{8, 0x34, {}, Bytes(10), Bytes(246)}) == CodecErrorKind::payload_too_long);
  CHECK_NOTHROW(encode_frame(LegacyFrame{8, 0x34, {}, Bytes(255)}));
  CHECK_NOTHROW(encode_frame(LegacyFrame{8, 0x34, Bytes(13), Bytes(242)}));
}

TEST_CASE("airtime matches hand-evaluated formula") {
  const RadioParams p;
  // Tsym = 4096 / 125 kHz = 32768 us.
  CHECK(symbol_time(p).count() == 32768);
  // 0 B: num = -4, no payload blocks, 8 + 4.25 + 8 = 20.25 symbols.
  CHECK(airtime(p, 0, false).count() == 663552);
  // 4 B (AP decision): ceil(28/40) * 8 + 8 = 16, 28.25 symbols.
  CHECK(ap_decision_airtime(p).count() == 925696);
  // 255 B: ceil(2036/40) = 51, 51 * 8 + 8 = 416, 428.25 symbols.
  CHECK(airtime(p, 255, false).count() == 14032896);
  // SF7, no LDRO, 4 B: Tsym 1024 us, ceil(48/28) * 8 + 8 = 24, 36.25 symbols.
  CHECK(ap_decision_airtime(sf7()).count() == 37120);
}

TEST_CASE("airtime agrees with floating point oracle") {
  for (int sf = 7; sf <= 12; ++sf)
    for (int cr = 1; cr <= 4; ++cr)
      for (bool ldro : {false, true})
        for (bool explicit_header : {false, true})
          for (int pl = 0; pl <= 255; pl += 3) {
            RadioParams p;
            p.spreading_factor = sf;
            p.coding_rate = static_cast<CodingRate>(cr);
            p.low_data_rate_optimize = ldro;
            p.explicit_header = explicit_header;
            const double expected = oracle::lora_time_on_air(sf, 125000, cr, 8, ldro, explicit_header, pl);
            REQUIRE(time_on_air(p, static_cast<std::size_t>(pl), false) == doctest::Approx(expected).epsilon(1e-9));
          }
}

TEST_CASE("maximum LoRaWAN frame takes about 14 s") {
  const RadioParams p;
  const double t = time_on_air(p, 242, false);
  CHECK(t == doctest::Approx(14.0).epsilon(0.10));
  CHECK(time_on_air(p, 255, false) == doctest::Approx(14.0).epsilon(0.01));
}

TEST_CASE("AP decision time") {
  const RadioParams p;
  const double d = time_to_ap_decision(p);
  CHECK(d >= 0.8);
  CHECK(d <= 1.0);
  CHECK(d == time_on_air(p, 0, true));
  CHECK(time_to_ap_decision(sf7()) < d);
  CHECK(time_to_ap_decision(sf7()) == doctest::Approx(0.03712));
}

TEST_CASE("airtime is monotone in payload length and spreading factor") {
  for (int sf = 7; sf <= 12; ++sf) {
    RadioParams p;
    p.spreading_factor = sf;
    p.low_data_rate_optimize = sf >= 11;
    for (std::size_t pl = 1; pl <= 255; ++pl) REQUIRE(airtime(p, pl, false) >= airtime(p, pl - 1, false));
    // Strict across coding blocks.
    REQUIRE(airtime(p, 255, false) > airtime(p, 0, false));
    if (sf < 12) {
      RadioParams q = p;
      q.spreading_factor = sf + 1;
      q.low_data_rate_optimize = sf + 1 >= 11;
      for (std::size_t pl = 0; pl <= 255; ++pl) REQUIRE(airtime(q, pl, false) > airtime(p, pl, false));
    }
  }
  CHECK(time_on_air(RadioParams{}, 242, false) > time_on_air(sf7(), 242, false));
}

TEST_CASE("AP airtime counts four extra payload bytes") {
  const RadioParams p;
  for (std::size_t pl = 0; pl <= 251; ++pl) REQUIRE(airtime(p, pl, true) == airtime(p, pl + 4, false));
}

TEST_CASE("radio parameter validation") {
  RadioParams p;
  CHECK_NOTHROW(p.validate());
  p.spreading_factor = 13;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.bandwidth_hz = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK(parse_coding_rate("4/7") == CodingRate::cr4_7);
  CHECK(to_string(CodingRate::cr4_8) == "4/8");
  CHECK_THROWS(parse_coding_rate("4/9"));
}
