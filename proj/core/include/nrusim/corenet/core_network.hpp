/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrusim/common/ipv4.hpp"
#include "nrusim/corenet/ip_pool.hpp"

namespace nrusim::corenet {

struct SubscriberRecord {
  std::string imsi;
  bool enabled = true;
};

/// Provisioned subscribers keyed by IMSI. Stands in for the UDR/UDM/AUSF
/// functions: admission is an allowlist check.
class SubscriberStore {
 public:
  /// Throws ConfigError for malformed or duplicate IMSIs.
  void add(SubscriberRecord record);
  const SubscriberRecord* find(std::string_view imsi) const;
  std::size_t size() const { return records_.size(); }

  /// Exactly 15 decimal digits.
  static bool well_formed(std::string_view imsi);

 private:
  std::map<std::string, SubscriberRecord, std::less<>> records_;
};

enum class RejectReason { Malformed, UnknownSubscriber, Disabled };

struct RegistrationResult {
  bool accepted = false;
  std::optional<RejectReason> reason;

  static RegistrationResult accept() { return {true, std::nullopt}; }
  static RegistrationResult reject(RejectReason r) { return {false, r}; }
};

enum class SessionState { Active, Released };

using SessionId = std::uint64_t;

struct PduSession {
  SessionId id = 0;
  std::string ue_id;
  Ipv4Address ip;
  std::uint32_t teid_uplink = 0;
  std::uint32_t teid_downlink = 0;
  SessionState state = SessionState::Active;
  /// Name of the UE-side tunnel interface bound to `ip`.
  std::string interface_name;
};

struct CoreConfig {
  Cidr core_subnet = Cidr::parse("192.168.70.128/26");
  Ipv4Address upf_address = Ipv4Address(192, 168, 70, 134);
  Ipv4Address amf_address = Ipv4Address(192, 168, 70, 132);
  Cidr ue_pool = Cidr::parse("12.1.1.0/24");

  void validate() const;
};

enum class ReleaseOutcome { Released, AlreadyReleased };

/// Minimal 5G core control plane: AMF registration and SMF session management.
class CoreNetwork {
 public:
  static constexpr std::string_view kUeInterfaceName = "oaitun_ue1";

  CoreNetwork(CoreConfig config, SubscriberStore subscribers, std::uint64_t teid_seed = 0);

  const CoreConfig& config() const { return config_; }
  const SubscriberStore& subscribers() const { return subscribers_; }
  SubscriberStore& subscribers() { return subscribers_; }
  const IpPool& pool() const { return pool_; }

  /// Re-registration replaces the previous registration of the same IMSI.
  RegistrationResult register_ue(std::string_view imsi);
  bool is_registered(std::string_view ue_id) const;
  void deregister(std::string_view ue_id);

  /// Throws StateError for an unregistered UE, AllocationError when the pool
  /// is exhausted.
  const PduSession& establish_pdu_session(std::string_view ue_id);

  /// Double release is a no-op reported as AlreadyReleased.
  ReleaseOutcome release_session(SessionId id);

  /// Throws StateError("busy") while any session is active. Same CIDR is a no-op.
  const CoreConfig& reconfigure_pool(Cidr cidr);

  const PduSession* session(SessionId id) const;
  const PduSession* session_for_ip(Ipv4Address ip) const;
  const PduSession* session_for_uplink_teid(std::uint32_t teid) const;
  std::vector<const PduSession*> active_sessions() const;

  /// Throws InvariantBreach if IP/TEID uniqueness or pool accounting fails.
  void check_invariants() const;

 private:
  std::uint32_t next_teid();

  CoreConfig config_;
  SubscriberStore subscribers_;
  IpPool pool_;
  std::map<std::string, std::string, std::less<>> registrations_;  // ue_id -> imsi
  std::map<SessionId, PduSession> sessions_;
  std::map<std::uint32_t, SessionId> active_teids_;
  SessionId next_session_id_ = 1;
  std::uint32_t teid_counter_;
};

std::string_view to_string(RejectReason r);

}  // namespace nrusim::corenet
