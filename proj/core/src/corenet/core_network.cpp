/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/corenet/core_network.hpp"

#include <algorithm>
#include <set>

#include "nrusim/common/rng.hpp"

namespace nrusim::corenet {

void SubscriberStore::add(SubscriberRecord record) {
  if (!well_formed(record.imsi)) throw ConfigError("malformed IMSI '" + record.imsi + "'");
  const auto key = record.imsi;
  if (!records_.emplace(key, std::move(record)).second) {
    throw ConfigError("duplicate IMSI '" + key + "'");
  }
}

const SubscriberRecord* SubscriberStore::find(std::string_view imsi) const {
  const auto it = records_.find(imsi);
  return it == records_.end() ? nullptr : &it->second;
}

bool SubscriberStore::well_formed(std::string_view imsi) {
  return imsi.size() == 15 &&
         std::all_of(imsi.begin(), imsi.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void CoreConfig::validate() const {
  if (!core_subnet.contains(upf_address)) {
    throw ConfigError("UPF address " + upf_address.to_string() + " outside core subnet " + core_subnet.to_string());
  }
  if (!core_subnet.contains(amf_address)) {
    throw ConfigError("AMF address " + amf_address.to_string() + " outside core subnet " + core_subnet.to_string());
  }
  if (ue_pool.host_count() < 2) throw ConfigError("UE pool " + ue_pool.to_string() + " too small");
}

CoreNetwork::CoreNetwork(CoreConfig config, SubscriberStore subscribers, std::uint64_t teid_seed)
    : config_(config),
      subscribers_(std::move(subscribers)),
      pool_(config.ue_pool),
      teid_counter_(static_cast<std::uint32_t>(mix64(teid_seed) & 0x7FFFFFFFu)) {
  config_.validate();
}

RegistrationResult CoreNetwork::register_ue(std::string_view imsi) {
  if (!SubscriberStore::well_formed(imsi)) return RegistrationResult::reject(RejectReason::Malformed);
  const auto* rec = subscribers_.find(imsi);
  if (rec == nullptr) return RegistrationResult::reject(RejectReason::UnknownSubscriber);
  if (!rec->enabled) return RegistrationResult::reject(RejectReason::Disabled);
  registrations_[std::string(imsi)] = std::string(imsi);
  return RegistrationResult::accept();
}

bool CoreNetwork::is_registered(std::string_view ue_id) const {
  return registrations_.find(ue_id) != registrations_.end();
}

void CoreNetwork::deregister(std::string_view ue_id) {
  if (auto it = registrations_.find(ue_id); it != registrations_.end()) registrations_.erase(it);
}

std::uint32_t CoreNetwork::next_teid() {
  // Seeded counter; 0 is reserved and in-use values are skipped.
  for (;;) {
    ++teid_counter_;
    if (teid_counter_ == 0) continue;
    if (active_teids_.count(teid_counter_) == 0) return teid_counter_;
  }
}

const PduSession& CoreNetwork::establish_pdu_session(std::string_view ue_id) {
  if (!is_registered(ue_id)) {
    throw StateError("UE " + std::string(ue_id) + " must register before establishing a PDU session");
  }
  PduSession s;
  s.id = next_session_id_;
  s.ue_id = std::string(ue_id);
  s.ip = pool_.allocate();
  s.teid_uplink = next_teid();
  active_teids_[s.teid_uplink] = s.id;
  s.teid_downlink = next_teid();
  active_teids_[s.teid_downlink] = s.id;
  s.state = SessionState::Active;
  s.interface_name = std::string(kUeInterfaceName);
  ++next_session_id_;
  return sessions_.emplace(s.id, std::move(s)).first->second;
}

ReleaseOutcome CoreNetwork::release_session(SessionId id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw StateError("unknown session " + std::to_string(id));
  auto& s = it->second;
  if (s.state == SessionState::Released) return ReleaseOutcome::AlreadyReleased;
  pool_.release(s.ip);
  active_teids_.erase(s.teid_uplink);
  active_teids_.erase(s.teid_downlink);
  s.state = SessionState::Released;
  return ReleaseOutcome::Released;
}

const CoreConfig& CoreNetwork::reconfigure_pool(Cidr cidr) {
  if (cidr == config_.ue_pool) return config_;
  if (!active_sessions().empty()) {
    throw StateError("busy: cannot change the address pool while sessions are active");
  }
  CoreConfig next = config_;
  next.ue_pool = cidr;
  next.validate();
  pool_ = IpPool(cidr);
  config_ = next;
  return config_;
}

const PduSession* CoreNetwork::session(SessionId id) const {
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : &it->second;
}

const PduSession* CoreNetwork::session_for_ip(Ipv4Address ip) const {
  for (const auto& [id, s] : sessions_) {
    if (s.state == SessionState::Active && s.ip == ip) return &s;
  }
  return nullptr;
}

const PduSession* CoreNetwork::session_for_uplink_teid(std::uint32_t teid) const {
  const auto it = active_teids_.find(teid);
  if (it == active_teids_.end()) return nullptr;
  const auto* s = session(it->second);
  return s != nullptr && s->teid_uplink == teid ? s : nullptr;
}

std::vector<const PduSession*> CoreNetwork::active_sessions() const {
  std::vector<const PduSession*> out;
  for (const auto& [id, s] : sessions_) {
    if (s.state == SessionState::Active) out.push_back(&s);
  }
  return out;
}

void CoreNetwork::check_invariants() const {
  std::set<std::uint32_t> ips;
  std::set<std::uint32_t> teids;
  std::uint32_t active = 0;
  for (const auto* s : active_sessions()) {
    ++active;
    if (!ips.insert(s->ip.value()).second) throw InvariantBreach("duplicate active IP " + s->ip.to_string());
    if (s->teid_uplink == s->teid_downlink) throw InvariantBreach("uplink TEID equals downlink TEID");
    if (!teids.insert(s->teid_uplink).second || !teids.insert(s->teid_downlink).second) {
      throw InvariantBreach("duplicate active TEID");
    }
    if (!pool_.cidr().contains(s->ip) || !pool_.is_allocated(s->ip) || s->ip == pool_.gateway()) {
      throw InvariantBreach("session IP " + s->ip.to_string() + " not allocated from the pool");
    }
  }
  if (pool_.allocated_count() != active) throw InvariantBreach("pool allocation count disagrees with sessions");
  if (pool_.allocated_count() + pool_.free_count() != pool_.cidr().host_count() - 1) {
    throw InvariantBreach("pool accounting broken");
  }
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Malformed: return "malformed";
    case RejectReason::UnknownSubscriber: return "unknown-subscriber";
    case RejectReason::Disabled: return "disabled";
  }
  return "?";
}

}  // namespace nrusim::corenet
