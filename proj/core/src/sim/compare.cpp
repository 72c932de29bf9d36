/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/sim/compare.hpp"

#include <cstdio>
#include <regex>

#include "nrusim/common/error.hpp"

namespace nrusim::sim {

namespace {
constexpr std::pair<Metric, std::string_view> kMetricNames[] = {
    {Metric::DlPeak, "dl_peak"}, {Metric::DlAvgLow, "dl_avg_low"}, {Metric::DlAvgHigh, "dl_avg_high"},
    {Metric::UlPeak, "ul_peak"}, {Metric::UlAvgLow, "ul_avg_low"}, {Metric::UlAvgHigh, "ul_avg_high"},
    {Metric::RttMin, "rtt_min"}, {Metric::RttAvg, "rtt_avg"},       {Metric::RttMax, "rtt_max"}};
constexpr std::pair<Relation, std::string_view> kRelationNames[] = {{Relation::LessEqual, "<="},
                                                                    {Relation::GreaterEqual, ">="},
                                                                    {Relation::Equal, "=="},
                                                                    {Relation::Less, "<"},
                                                                    {Relation::Greater, ">"}};

std::string fmt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

const metrics::ScenarioReport* find(const std::vector<metrics::ScenarioReport>& reports, const std::string& name) {
  for (const auto& r : reports) {
    if (r.name == name) return &r;
  }
  return nullptr;
}
}  // namespace

std::string_view to_string(Metric m) {
  for (const auto& [k, v] : kMetricNames) {
    if (k == m) return v;
  }
  return "?";
}

std::string_view to_string(Relation r) {
  for (const auto& [k, v] : kRelationNames) {
    if (k == r) return v;
  }
  return "?";
}

Metric parse_metric(std::string_view s) {
  for (const auto& [k, v] : kMetricNames) {
    if (v == s) return k;
  }
  throw ConfigError("unknown metric '" + std::string(s) + "'");
}

Relation parse_relation(std::string_view s) {
  if (s == "=") return Relation::Equal;
  for (const auto& [k, v] : kRelationNames) {
    if (v == s) return k;
  }
  throw ConfigError("unknown relation '" + std::string(s) + "'");
}

std::optional<double> metric_value(const metrics::ScenarioReport& r, Metric m) {
  switch (m) {
    case Metric::RttMin:
    case Metric::RttAvg:
    case Metric::RttMax: {
      const auto* p = r.first_ping();
      if (p == nullptr || p->stats.empty()) return std::nullopt;
      return m == Metric::RttMin ? p->stats.min : m == Metric::RttAvg ? p->stats.avg : p->stats.max;
    }
    default:
      break;
  }
  const bool dl = m == Metric::DlPeak || m == Metric::DlAvgLow || m == Metric::DlAvgHigh;
  const auto* t = r.first_throughput(dl ? spectrum::Link::DL : spectrum::Link::UL);
  if (t == nullptr) return std::nullopt;
  switch (m) {
    case Metric::DlPeak:
    case Metric::UlPeak:
      return t->stats.peak;
    case Metric::DlAvgLow:
    case Metric::UlAvgLow:
      return t->stats.avg_low;
    default:
      return t->stats.avg_high;
  }
}

std::string Expectation::to_string() const {
  return std::string(sim::to_string(lhs.metric)) + "(" + lhs.report + ") " + std::string(sim::to_string(relation)) +
         " " + std::string(sim::to_string(rhs.metric)) + "(" + rhs.report + ")";
}

Expectation Expectation::parse(std::string_view text) {
  static const std::regex re(R"(^\s*(\w+)\(\s*([\w.-]+)\s*\)\s*(<=|>=|==|=|<|>)\s*(\w+)\(\s*([\w.-]+)\s*\)\s*$)");
  std::cmatch m;
  if (!std::regex_match(text.data(), text.data() + text.size(), m, re)) {
    throw ConfigError("malformed expectation '" + std::string(text) + "'");
  }
  return Expectation{Operand{parse_metric(m[1].str()), m[2].str()}, parse_relation(m[3].str()),
                     Operand{parse_metric(m[4].str()), m[5].str()}};
}

std::vector<Expectation> parse_expectations(std::string_view text) {
  std::vector<Expectation> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(Expectation::parse(line));
    pos = nl + 1;
  }
  return out;
}

std::string Verdict::to_string() const {
  return std::string(pass ? "PASS " : "FAIL ") + expectation.to_string() + "  [" + fmt(lhs) + " vs " + fmt(rhs) + "]";
}

Relation relation_between(double a, double b) {
  if (a < b) return Relation::Less;
  if (a > b) return Relation::Greater;
  return Relation::Equal;
}

bool holds(Relation r, double a, double b) {
  switch (r) {
    case Relation::Less:
      return a < b;
    case Relation::LessEqual:
      return a <= b;
    case Relation::Equal:
      return a == b;
    case Relation::GreaterEqual:
      return a >= b;
    case Relation::Greater:
      return a > b;
  }
  return false;
}

std::vector<Verdict> compare_reports(const metrics::ScenarioReport& a, const metrics::ScenarioReport& b) {
  std::vector<Verdict> out;
  for (const auto m : kAllMetrics) {
    const auto va = metric_value(a, m);
    const auto vb = metric_value(b, m);
    if (!va && !vb) continue;
    Verdict v{Expectation{Operand{m, a.name}, Relation::Equal, Operand{m, b.name}}, va, vb, false};
    if (va && vb) {
      v.expectation.relation = relation_between(*va, *vb);
      v.pass = true;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Verdict> evaluate(const std::vector<Expectation>& expectations,
                              const std::vector<metrics::ScenarioReport>& reports) {
  std::vector<Verdict> out;
  for (const auto& e : expectations) {
    Verdict v{e, std::nullopt, std::nullopt, false};
    if (const auto* l = find(reports, e.lhs.report)) v.lhs = metric_value(*l, e.lhs.metric);
    if (const auto* r = find(reports, e.rhs.report)) v.rhs = metric_value(*r, e.rhs.metric);
    v.pass = v.lhs && v.rhs && holds(e.relation, *v.lhs, *v.rhs);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace nrusim::sim
