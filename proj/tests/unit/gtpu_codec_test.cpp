/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <vector>

#include <gtest/gtest.h>

#include "nrusim/common/rng.hpp"
#include "nrusim/userplane/gtpu.hpp"
#include "nrusim/userplane/packet.hpp"

using namespace nrusim;
using namespace nrusim::userplane;

namespace {

std::vector<std::uint8_t> unhex(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) out.push_back(static_cast<std::uint8_t>(std::stoul(s.substr(i, 2), nullptr, 16)));
  return out;
}

// 84-byte echo request emitted by the reference dissector (scapy).
const std::string kInner84 =
    "45000054000100004001197e0c010102acd9a74e0800eeb712340001000102030405060708090a0b0c0d0e0f101112131415161718191a1b"
    "1c1d1e1f202122232425262728292a2b2c2d2e2f3031323334353637";

std::vector<std::uint8_t> header(const std::vector<std::uint8_t>& b) { return {b.begin(), b.begin() + 8}; }

}  // namespace

TEST(Gtpu, ReferenceVectors) {
  const auto inner = unhex(kInner84);
  ASSERT_EQ(inner.size(), 84u);
  const auto v1 = encode_gtpu(1, inner);
  EXPECT_EQ(v1.size(), 92u);
  EXPECT_EQ(header(v1), (std::vector<std::uint8_t>{0x30, 0xFF, 0x00, 0x54, 0x00, 0x00, 0x00, 0x01}));

  const auto v2 = encode_gtpu(0, {});
  EXPECT_EQ(v2, (std::vector<std::uint8_t>{0x30, 0xFF, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}));

  const std::uint8_t one[] = {0x45};
  const auto v3 = encode_gtpu(0xDEADBEEF, one);
  EXPECT_EQ(v3.size(), 9u);
  EXPECT_EQ(header(v3), (std::vector<std::uint8_t>{0x30, 0xFF, 0x00, 0x01, 0xDE, 0xAD, 0xBE, 0xEF}));
}

TEST(Gtpu, InnerEncoderMatchesReference) {
  const auto p = make_echo_request(Ipv4Address::parse("12.1.1.2"), Ipv4Address::parse("172.217.167.78"), 0x1234, 1);
  auto q = p;
  q.ident = 1;
  EXPECT_EQ(encode_ipv4(q), unhex(kInner84));
}

TEST(Gtpu, DecodeErrors) {
  const std::vector<std::uint8_t> seven(7, 0);
  try {
    decode_gtpu(seven);
    FAIL();
  } catch (const GtpuError& e) {
    EXPECT_EQ(e.kind(), GtpuErrorKind::Truncated);
  }
  const std::vector<std::uint8_t> v2{0x50, 0xFF, 0, 0, 0, 0, 0, 0};
  try {
    decode_gtpu(v2);
    FAIL();
  } catch (const GtpuError& e) {
    EXPECT_EQ(e.kind(), GtpuErrorKind::BadVersion);
  }
  std::vector<std::uint8_t> long_len{0x30, 0xFF, 0x00, 0x05, 0, 0, 0, 1, 0xAA};
  EXPECT_THROW(decode_gtpu(long_len), GtpuError);
}

TEST(Gtpu, DecodesOptionalFields) {
  // S flag set: 4 optional octets counted in the length.
  const std::vector<std::uint8_t> b{0x32, 0xFF, 0x00, 0x05, 0, 0, 0, 7, 0x12, 0x34, 0x00, 0x00, 0xAB};
  const auto v = decode_gtpu(b);
  EXPECT_EQ(v.header.teid, 7u);
  ASSERT_TRUE(v.header.sequence);
  EXPECT_EQ(*v.header.sequence, 0x1234);
  ASSERT_EQ(v.payload.size(), 1u);
  EXPECT_EQ(v.payload[0], 0xAB);
}

TEST(GtpuProperty, RoundTrip) {
  Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    const auto teid = static_cast<std::uint32_t>(rng.next());
    std::vector<std::uint8_t> p(rng.uniform_int(0, 1500));
    for (auto& b : p) b = static_cast<std::uint8_t>(rng.next());
    const auto enc = encode_gtpu(teid, p);
    ASSERT_EQ(enc.size(), p.size() + kGtpuHeaderSize);
    const auto dec = decode_gtpu(enc);
    ASSERT_EQ(dec.header.teid, teid);
    ASSERT_TRUE(std::equal(dec.payload.begin(), dec.payload.end(), p.begin(), p.end()));
  }
}
