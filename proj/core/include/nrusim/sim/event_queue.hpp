/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrusim/common/units.hpp"

namespace nrusim::sim {

struct Event {
  Micros time{0};
  std::uint64_t seq = 0;
  std::string actor;
  std::string action;
  nlohmann::json payload;
  std::function<void()> handler;
};

/// Min-queue on (time, insertion sequence).
class EventQueue {
 public:
  std::uint64_t push(Micros time, std::string actor, std::string action, nlohmann::json payload,
                     std::function<void()> handler);
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Micros next_time() const { return heap_.top().time; }
  Event pop();

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

/// Line-delimited JSON record of everything the simulation did.
class EventLog {
 public:
  void record(Micros t, std::string_view actor, std::string_view action, const nlohmann::json& detail = {});

  const std::vector<std::string>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }
  std::string text() const;
  /// FNV-1a 64 over the serialized lines, 16 hex digits.
  std::string digest() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> lines_;
  Micros last_{0};
};

/// Single-threaded deterministic event loop. Each executed event is logged
/// with its payload before its handler runs.
class Simulator {
 public:
  explicit Simulator(EventLog& log) : log_(log) {}

  Micros now() const { return now_; }
  /// Throws InvariantBreach when `t` precedes the current time.
  void at(Micros t, std::string actor, std::string action, nlohmann::json payload, std::function<void()> handler);
  void after(Micros delay, std::string actor, std::string action, nlohmann::json payload,
             std::function<void()> handler) {
    at(now_ + delay, std::move(actor), std::move(action), std::move(payload), std::move(handler));
  }
  /// Runs until the queue drains or the next event lies beyond `until`.
  void run(Micros until = Micros{std::numeric_limits<std::int64_t>::max()});

  EventLog& log() { return log_; }
  std::uint64_t executed() const { return executed_; }

 private:
  EventLog& log_;
  EventQueue queue_;
  Micros now_{0};
  std::uint64_t executed_ = 0;
};

}  // namespace nrusim::sim
