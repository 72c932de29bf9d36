/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrusim/corenet/core_network.hpp"
#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::access {

enum class UePhase { POWERED = 0, SCANNING = 1, SYNCED = 2, REGISTERED = 3, SESSION_ACTIVE = 4 };

enum class AttachFailureKind { CellNotFound, RadioLinkDown, RegistrationRejected, SessionRejected };

struct AttachFailure {
  AttachFailureKind kind;
  std::string detail;
};

struct UeState {
  UePhase phase = UePhase::POWERED;
  std::optional<spectrum::Gscn> found_gscn;
  std::optional<corenet::PduSession> session;
  std::optional<AttachFailure> failure;
  std::size_t scan_steps = 0;

  /// Throws InvariantBreach when fields disagree with the phase.
  void check() const;
};

struct PhaseTransition {
  UePhase from;
  UePhase to;
};

/// UE control state. Phases only move forward one step at a time; reset()
/// is the only way back.
class UeStateMachine {
 public:
  UeStateMachine(std::string ue_id, std::string imsi) : ue_id_(std::move(ue_id)), imsi_(std::move(imsi)) {}

  const std::string& ue_id() const { return ue_id_; }
  const std::string& imsi() const { return imsi_; }
  const UeState& state() const { return state_; }
  const std::vector<PhaseTransition>& trace() const { return trace_; }

  void start_scan();
  void synced(spectrum::Gscn gscn, std::size_t steps);
  void registered();
  void session_established(corenet::PduSession session);
  void fail(AttachFailure failure);
  /// Detach: back to POWERED with the session dropped.
  void reset();

 private:
  void expect(UePhase from, UePhase to) const;
  void advance(UePhase from, UePhase to);

  std::string ue_id_;
  std::string imsi_;
  UeState state_;
  std::vector<PhaseTransition> trace_;
};

struct AttachContext {
  const spectrum::BandPlan* band = nullptr;
  /// GSCN the gNB broadcasts on; empty when the gNB is off air.
  std::optional<spectrum::Gscn> broadcasting;
  bool radio_link = true;
  corenet::CoreNetwork* core = nullptr;
};

/// Cell search, registration and session establishment in one go. Failure
/// leaves the UE at its last good phase with the reason recorded.
const UeState& attach(UeStateMachine& ue, const AttachContext& ctx);

std::string_view to_string(UePhase p);
std::string_view to_string(AttachFailureKind k);

}  // namespace nrusim::access
