/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/access/ue.hpp"

#include <string>

#include "nrusim/access/cell_search.hpp"
#include "nrusim/common/error.hpp"
#include "nrusim/corenet/ip_pool.hpp"

namespace nrusim::access {

void UeState::check() const {
  const bool synced = phase >= UePhase::SYNCED;
  if (synced != found_gscn.has_value()) {
    throw InvariantBreach("UE in phase " + std::string(to_string(phase)) +
                          (synced ? " has no GSCN" : " already holds a GSCN"));
  }
  if ((phase == UePhase::SESSION_ACTIVE) != session.has_value()) {
    throw InvariantBreach("UE in phase " + std::string(to_string(phase)) + " disagrees with its session state");
  }
}

void UeStateMachine::expect(UePhase from, UePhase to) const {
  if (state_.phase != from) {
    throw StateError("UE " + ue_id_ + ": cannot move to " + std::string(to_string(to)) + " from " +
                     std::string(to_string(state_.phase)));
  }
}

void UeStateMachine::advance(UePhase from, UePhase to) {
  expect(from, to);
  trace_.push_back(PhaseTransition{from, to});
  state_.phase = to;
}

void UeStateMachine::start_scan() {
  state_.failure.reset();
  advance(UePhase::POWERED, UePhase::SCANNING);
}

void UeStateMachine::synced(spectrum::Gscn gscn, std::size_t steps) {
  expect(UePhase::SCANNING, UePhase::SYNCED);
  state_.found_gscn = gscn;
  state_.scan_steps = steps;
  advance(UePhase::SCANNING, UePhase::SYNCED);
}

void UeStateMachine::registered() { advance(UePhase::SYNCED, UePhase::REGISTERED); }

void UeStateMachine::session_established(corenet::PduSession session) {
  expect(UePhase::REGISTERED, UePhase::SESSION_ACTIVE);
  state_.session = std::move(session);
  advance(UePhase::REGISTERED, UePhase::SESSION_ACTIVE);
}

void UeStateMachine::fail(AttachFailure failure) { state_.failure = std::move(failure); }

void UeStateMachine::reset() {
  if (state_.phase != UePhase::POWERED) trace_.push_back(PhaseTransition{state_.phase, UePhase::POWERED});
  state_ = UeState{};
}

const UeState& attach(UeStateMachine& ue, const AttachContext& ctx) {
  if (ctx.band == nullptr || ctx.core == nullptr) throw StateError("attach needs a band plan and a core network");
  ue.start_scan();
  const auto search = ue_cell_search(*ctx.band, ctx.broadcasting);
  if (!search.found) {
    ue.fail(AttachFailure{AttachFailureKind::CellNotFound,
                          "no cell after " + std::to_string(search.steps) + " GSCN candidates"});
    return ue.state();
  }
  ue.synced(*search.found, search.steps);
  if (!ctx.radio_link) {
    ue.fail(AttachFailure{AttachFailureKind::RadioLinkDown, "radio link not established"});
    return ue.state();
  }
  const auto reg = ctx.core->register_ue(ue.imsi());
  if (!reg.accepted) {
    ue.fail(AttachFailure{AttachFailureKind::RegistrationRejected, std::string(to_string(*reg.reason))});
    return ue.state();
  }
  ue.registered();
  try {
    ue.session_established(ctx.core->establish_pdu_session(ue.imsi()));
  } catch (const corenet::AllocationError& e) {
    ue.fail(AttachFailure{AttachFailureKind::SessionRejected, e.what()});
  }
  return ue.state();
}

std::string_view to_string(UePhase p) {
  switch (p) {
    case UePhase::POWERED: return "POWERED";
    case UePhase::SCANNING: return "SCANNING";
    case UePhase::SYNCED: return "SYNCED";
    case UePhase::REGISTERED: return "REGISTERED";
    case UePhase::SESSION_ACTIVE: return "SESSION_ACTIVE";
  }
  return "?";
}

std::string_view to_string(AttachFailureKind k) {
  switch (k) {
    case AttachFailureKind::CellNotFound: return "cell-not-found";
    case AttachFailureKind::RadioLinkDown: return "radio-link-down";
    case AttachFailureKind::RegistrationRejected: return "registration-rejected";
    case AttachFailureKind::SessionRejected: return "session-rejected";
  }
  return "?";
}

}  // namespace nrusim::access
