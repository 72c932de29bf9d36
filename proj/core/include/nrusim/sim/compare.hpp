/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrusim/metrics/report.hpp"

namespace nrusim::sim {

enum class Metric { DlPeak, DlAvgLow, DlAvgHigh, UlPeak, UlAvgLow, UlAvgHigh, RttMin, RttAvg, RttMax };
enum class Relation { Less, LessEqual, Equal, GreaterEqual, Greater };

inline constexpr Metric kAllMetrics[] = {Metric::DlPeak,  Metric::DlAvgLow, Metric::DlAvgHigh,
                                         Metric::UlPeak,  Metric::UlAvgLow, Metric::UlAvgHigh,
                                         Metric::RttMin,  Metric::RttAvg,   Metric::RttMax};

std::string_view to_string(Metric m);
std::string_view to_string(Relation r);
Metric parse_metric(std::string_view s);
Relation parse_relation(std::string_view s);

/// Metric value from a report; nullopt when the report has no such probe.
std::optional<double> metric_value(const metrics::ScenarioReport& r, Metric m);

struct Operand {
  Metric metric;
  std::string report;
};

/// `dl_peak(test_b) > dl_peak(test_a)`
struct Expectation {
  Operand lhs;
  Relation relation;
  Operand rhs;

  std::string to_string() const;
  /// Throws ConfigError on malformed text.
  static Expectation parse(std::string_view text);
};

/// Parses one expectation per line; blank lines and `#` comments skipped.
std::vector<Expectation> parse_expectations(std::string_view text);

struct Verdict {
  Expectation expectation;
  std::optional<double> lhs;
  std::optional<double> rhs;
  bool pass = false;

  std::string to_string() const;
};

/// Observed relation between two values.
Relation relation_between(double a, double b);
bool holds(Relation r, double a, double b);

/// Every metric of `a` against the same metric of `b`, as observed relations.
/// Both reports must carry the same schema (checked on load).
std::vector<Verdict> compare_reports(const metrics::ScenarioReport& a, const metrics::ScenarioReport& b);

/// Evaluates expectations against reports looked up by name. Expectations
/// naming reports not in the set fail.
std::vector<Verdict> evaluate(const std::vector<Expectation>& expectations,
                              const std::vector<metrics::ScenarioReport>& reports);

}  // namespace nrusim::sim
