/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/userplane/gtpu.hpp"

#include <string>

namespace nrusim::userplane {

std::vector<std::uint8_t> encode_gtpu(std::uint32_t teid, std::span<const std::uint8_t> inner) {
  if (inner.size() > 0xFFFF) {
    throw GtpuError(GtpuErrorKind::Oversize,
                    "inner packet of " + std::to_string(inner.size()) + " octets exceeds the 16-bit length field");
  }
  const auto len = static_cast<std::uint16_t>(inner.size());
  std::vector<std::uint8_t> out;
  out.reserve(kGtpuHeaderSize + inner.size());
  out.push_back(0x30);  // version 1, PT 1, no optional fields
  out.push_back(kGtpuMessageGpdu);
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.push_back(static_cast<std::uint8_t>(teid >> 24));
  out.push_back(static_cast<std::uint8_t>(teid >> 16));
  out.push_back(static_cast<std::uint8_t>(teid >> 8));
  out.push_back(static_cast<std::uint8_t>(teid));
  out.insert(out.end(), inner.begin(), inner.end());
  return out;
}

GtpuView decode_gtpu(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kGtpuHeaderSize) {
    throw GtpuError(GtpuErrorKind::Truncated,
                    "GTP-U header needs 8 octets, got " + std::to_string(bytes.size()));
  }
  GtpuHeader h;
  const std::uint8_t b0 = bytes[0];
  h.version = b0 >> 5;
  h.protocol_type = (b0 >> 4) & 1;
  h.ext_flag = (b0 & 0x04) != 0;
  h.seq_flag = (b0 & 0x02) != 0;
  h.npdu_flag = (b0 & 0x01) != 0;
  if (h.version != 1) {
    throw GtpuError(GtpuErrorKind::BadVersion, "unsupported GTP version " + std::to_string(h.version));
  }
  if (h.protocol_type != 1) throw GtpuError(GtpuErrorKind::BadProtocolType, "protocol type is not GTP");
  h.message_type = bytes[1];
  if (h.message_type != kGtpuMessageGpdu) {
    throw GtpuError(GtpuErrorKind::UnsupportedMessage,
                    "message type " + std::to_string(h.message_type) + " is not a G-PDU");
  }
  h.length = static_cast<std::uint16_t>((bytes[2] << 8) | bytes[3]);
  h.teid = (std::uint32_t{bytes[4]} << 24) | (std::uint32_t{bytes[5]} << 16) |
           (std::uint32_t{bytes[6]} << 8) | bytes[7];
  if (bytes.size() - kGtpuHeaderSize != h.length) {
    throw GtpuError(GtpuErrorKind::Framing, "length field " + std::to_string(h.length) + " but " +
                                                std::to_string(bytes.size() - kGtpuHeaderSize) +
                                                " octets follow the header");
  }
  std::size_t offset = kGtpuHeaderSize;
  if (h.ext_flag || h.seq_flag || h.npdu_flag) {
    if (h.length < 4) throw GtpuError(GtpuErrorKind::Framing, "optional fields exceed the length field");
    if (h.seq_flag) h.sequence = static_cast<std::uint16_t>((bytes[8] << 8) | bytes[9]);
    if (h.npdu_flag) h.npdu_number = bytes[10];
    h.next_extension_type = bytes[11];
    offset += 4;
    std::uint8_t next = h.ext_flag ? h.next_extension_type : 0;
    while (next != 0) {
      if (offset >= bytes.size()) throw GtpuError(GtpuErrorKind::Framing, "extension header truncated");
      const std::size_t ext_len = std::size_t{bytes[offset]} * 4;
      if (ext_len == 0 || offset + ext_len > bytes.size()) {
        throw GtpuError(GtpuErrorKind::Framing, "extension header length invalid");
      }
      next = bytes[offset + ext_len - 1];
      offset += ext_len;
    }
  }
  return GtpuView{h, bytes.subspan(offset)};
}

std::string_view to_string(GtpuErrorKind kind) {
  switch (kind) {
    case GtpuErrorKind::Truncated: return "truncated";
    case GtpuErrorKind::BadVersion: return "bad-version";
    case GtpuErrorKind::BadProtocolType: return "bad-protocol-type";
    case GtpuErrorKind::UnsupportedMessage: return "unsupported-message";
    case GtpuErrorKind::Framing: return "framing";
    case GtpuErrorKind::Oversize: return "oversize";
  }
  return "?";
}

}  // namespace nrusim::userplane
