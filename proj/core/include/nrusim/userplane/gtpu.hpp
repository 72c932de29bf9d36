/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nrusim/common/error.hpp"

namespace nrusim::userplane {

inline constexpr std::uint16_t kGtpuPort = 2152;
inline constexpr std::uint8_t kGtpuMessageGpdu = 0xFF;
inline constexpr std::size_t kGtpuHeaderSize = 8;

/// GTPv1-U header. Optional fields are present on the wire when any of the
/// E/S/PN flags is set.
///
///   octet 0   : version(3) PT(1) spare(1) E(1) S(1) PN(1)
///   octet 1   : message type
///   octet 2-3 : length of everything after the mandatory 8 octets
///   octet 4-7 : TEID
///   [octet 8-9 sequence, 10 N-PDU number, 11 next extension type]
struct GtpuHeader {
  std::uint8_t version = 1;
  std::uint8_t protocol_type = 1;
  bool ext_flag = false;
  bool seq_flag = false;
  bool npdu_flag = false;
  std::uint8_t message_type = kGtpuMessageGpdu;
  std::uint16_t length = 0;
  std::uint32_t teid = 0;
  std::optional<std::uint16_t> sequence;
  std::optional<std::uint8_t> npdu_number;
  std::uint8_t next_extension_type = 0;
};

enum class GtpuErrorKind { Truncated, BadVersion, BadProtocolType, UnsupportedMessage, Framing, Oversize };

class GtpuError : public Error {
 public:
  GtpuError(GtpuErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  GtpuErrorKind kind() const { return kind_; }

 private:
  GtpuErrorKind kind_;
};

/// Flag-free G-PDU: 30 FF <len> <teid> followed by `inner`.
std::vector<std::uint8_t> encode_gtpu(std::uint32_t teid, std::span<const std::uint8_t> inner);

struct GtpuView {
  GtpuHeader header;
  /// Points into the decoded buffer.
  std::span<const std::uint8_t> payload;
};

/// Accepts only G-PDUs (message type 255) on the data path. Optional fields
/// and extension headers are skipped.
GtpuView decode_gtpu(std::span<const std::uint8_t> bytes);

std::string_view to_string(GtpuErrorKind kind);

}  // namespace nrusim::userplane
