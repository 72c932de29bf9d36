/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/sim/event_queue.hpp"

#include <cstdio>
#include <fstream>

#include "nrusim/common/error.hpp"

namespace nrusim::sim {

std::uint64_t EventQueue::push(Micros time, std::string actor, std::string action, nlohmann::json payload,
                               std::function<void()> handler) {
  const std::uint64_t seq = next_seq_++;
  heap_.push(Event{time, seq, std::move(actor), std::move(action), std::move(payload), std::move(handler)});
  return seq;
}

Event EventQueue::pop() {
  if (heap_.empty()) throw StateError("pop from an empty event queue");
  Event e = heap_.top();
  heap_.pop();
  return e;
}

void EventLog::record(Micros t, std::string_view actor, std::string_view action, const nlohmann::json& detail) {
  if (t < last_) {
    throw InvariantBreach("event log time went backwards: " + std::to_string(t.count()) + " us after " +
                          std::to_string(last_.count()) + " us");
  }
  last_ = t;
  nlohmann::json j = detail.is_object() ? detail : nlohmann::json::object();
  if (!detail.is_null() && !detail.is_object()) j["value"] = detail;
  j["t_us"] = t.count();
  j["actor"] = actor;
  j["action"] = action;
  lines_.push_back(j.dump());
}

std::string EventLog::text() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string EventLog::digest() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& l : lines_) {
    for (unsigned char c : l) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void EventLog::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text();
}

void Simulator::at(Micros t, std::string actor, std::string action, nlohmann::json payload,
                   std::function<void()> handler) {
  if (t < now_) {
    throw InvariantBreach(actor + "/" + action + " scheduled at " + std::to_string(t.count()) +
                          " us, before the current time " + std::to_string(now_.count()) + " us");
  }
  queue_.push(t, std::move(actor), std::move(action), std::move(payload), std::move(handler));
}

void Simulator::run(Micros until) {
  while (!queue_.empty() && queue_.next_time() <= until) {
    Event e = queue_.pop();
    if (e.time < now_) throw InvariantBreach("event queue returned an event from the past");
    now_ = e.time;
    ++executed_;
    log_.record(now_, e.actor, e.action, e.payload);
    if (e.handler) e.handler();
  }
}

}  // namespace nrusim::sim
