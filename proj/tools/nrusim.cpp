/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nrusim/common/error.hpp"
#include "nrusim/metrics/passive_monitor.hpp"
#include "nrusim/metrics/report.hpp"
#include "nrusim/spectrum/band_plan.hpp"
#include "nrusim/spectrum/raster.hpp"
#include "nrusim/spectrum/regulatory.hpp"
#include "nrusim/sim/compare.hpp"
#include "nrusim/sim/scenario.hpp"
#include "nrusim/sim/testbed.hpp"
#include "nrusim/userplane/pcap.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nrusim;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kBreach = 2;

struct Options {
  std::string data_dir;

  std::string band = "n46";
  std::optional<std::uint32_t> arfcn;
  std::optional<std::uint32_t> gscn;
  std::optional<std::string> freq_mhz;
  std::string link = "DL";
  std::string bandwidth_mhz = "40";
  double eirp_mw = 0.0;
  bool outdoor = false;
  std::string jurisdiction = "AU";

  std::vector<std::string> files;
  std::string jsonl_out;
  std::string log_dir;
  std::string pcap_dir;
  bool jsonl = false;
  std::string expect;
};

sim::Environment environment(const Options& o) {
  return sim::Environment::load(o.data_dir.empty() ? sim::Environment::default_data_dir() : o.data_dir);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

int plan_convert(const Options& o) {
  json j;
  if (o.arfcn) {
    const auto f = spectrum::arfcn_to_frequency(spectrum::Arfcn{*o.arfcn});
    j = {{"arfcn", *o.arfcn}, {"frequency_mhz", f.to_mhz_string()}};
  } else if (o.gscn) {
    const auto f = spectrum::gscn_to_ss_frequency(spectrum::Gscn{*o.gscn});
    j = {{"gscn", *o.gscn}, {"ss_frequency_mhz", f.to_mhz_string()}};
  } else if (o.freq_mhz) {
    const auto f = Frequency::parse_mhz(*o.freq_mhz);
    try {
      j = {{"frequency_mhz", f.to_mhz_string()}, {"arfcn", spectrum::frequency_to_arfcn(f).value}};
    } catch (const spectrum::RasterError& e) {
      j = {{"frequency_mhz", f.to_mhz_string()},
           {"error", e.what()},
           {"nearest_below", e.below().value},
           {"nearest_above", e.above().value}};
      std::cout << j.dump() << "\n";
      return kValidation;
    }
  } else {
    throw ConfigError("plan convert needs --arfcn, --gscn or --freq");
  }
  std::cout << j.dump() << "\n";
  return kOk;
}

int plan_validate(const Options& o) {
  const auto env = environment(o);
  if (!o.arfcn) throw ConfigError("plan validate needs --arfcn");
  const auto& band = env.bands.find(o.band);
  const bool ok = spectrum::validate_channel(band, spectrum::Arfcn{*o.arfcn}, spectrum::parse_link(o.link));
  std::cout << json{{"band", o.band}, {"arfcn", *o.arfcn}, {"link", o.link}, {"valid", ok}}.dump() << "\n";
  return ok ? kOk : kValidation;
}

int plan_scan(const Options& o) {
  const auto env = environment(o);
  for (const auto& c : spectrum::ss_scan_candidates(env.bands.find(o.band))) {
    std::cout << json{{"gscn", c.gscn.value}, {"ss_frequency_mhz", c.frequency.to_mhz_string()}}.dump() << "\n";
  }
  return kOk;
}

int plan_check(const Options& o) {
  const auto env = environment(o);
  spectrum::Emission e;
  if (o.arfcn) {
    e.centre = spectrum::arfcn_to_frequency(spectrum::Arfcn{*o.arfcn});
  } else if (o.freq_mhz) {
    e.centre = Frequency::parse_mhz(*o.freq_mhz);
  } else {
    throw ConfigError("plan check needs --arfcn or --freq");
  }
  e.bandwidth = Frequency::parse_mhz(o.bandwidth_mhz);
  e.eirp_mw = o.eirp_mw;
  e.indoor = !o.outdoor;
  const auto violations = spectrum::check_regulatory(e, env.rules, o.jurisdiction);
  json list = json::array();
  for (const auto& v : violations) {
    list.push_back({{"kind", spectrum::to_string(v.kind)}, {"rule", v.rule_index}, {"message", v.message}});
  }
  std::cout << json{{"centre_mhz", e.centre.to_mhz_string()},
                    {"bandwidth_mhz", e.bandwidth.to_mhz_string()},
                    {"eirp_mw", e.eirp_mw},
                    {"indoor", e.indoor},
                    {"compliant", violations.empty()},
                    {"violations", list}}
                   .dump()
            << "\n";
  return violations.empty() ? kOk : kValidation;
}

int validate_cmd(const Options& o) {
  const auto env = environment(o);
  int rc = kOk;
  for (const auto& f : o.files) {
    try {
      const auto s = sim::load_scenario(f, env);
      std::cout << f << ": ok (" << s.name << ", " << s.nodes.size() << " nodes, " << s.traffic.size()
                << " probes)\n";
    } catch (const Error& e) {
      std::cout << f << ": " << e.what() << "\n";
      rc = kValidation;
    }
  }
  return rc;
}

int run_cmd(const Options& o) {
  const auto env = environment(o);
  std::vector<sim::Scenario> scenarios;
  for (const auto& f : o.files) {
    try {
      scenarios.push_back(sim::load_scenario(f, env));
    } catch (const Error& e) {
      std::cerr << f << ": " << e.what() << "\n";
      return kValidation;
    }
  }
  std::vector<metrics::ScenarioReport> reports;
  for (const auto& s : scenarios) {
    try {
      auto a = sim::run_scenario(s, env);
      if (!o.log_dir.empty()) write_text(fs::path(o.log_dir) / (s.name + ".events.jsonl"), a.event_log);
      if (!o.pcap_dir.empty()) {
        fs::create_directories(o.pcap_dir);
        for (const auto& [tap, packets] : a.captures) {
          userplane::write_pcap_file((fs::path(o.pcap_dir) / (s.name + "." + tap + ".pcap")).string(), packets);
        }
      }
      reports.push_back(std::move(a.report));
    } catch (const sim::RunAborted& e) {
      const fs::path log = fs::path(o.log_dir.empty() ? "." : o.log_dir) / (s.name + ".aborted.events.jsonl");
      write_text(log, e.event_log());
      std::cerr << s.name << ": invariant breach: " << e.what() << "\n  event log: " << log.string() << "\n";
      return kBreach;
    }
  }
  if (!o.jsonl_out.empty()) write_text(o.jsonl_out, metrics::render_jsonl(reports));
  std::cout << (o.jsonl ? metrics::render_jsonl(reports) : metrics::render_table(reports));
  return kOk;
}

int compare_cmd(const Options& o) {
  std::vector<std::vector<metrics::ScenarioReport>> groups;
  std::vector<metrics::ScenarioReport> all;
  for (const auto& f : o.files) {
    groups.push_back(metrics::parse_jsonl(slurp(f)));
    all.insert(all.end(), groups.back().begin(), groups.back().end());
  }
  std::vector<sim::Verdict> verdicts;
  if (!o.expect.empty()) {
    verdicts = sim::evaluate(sim::parse_expectations(slurp(o.expect)), all);
  } else {
    if (all.size() != 2) throw ConfigError("compare without --expect needs exactly two reports");
    verdicts = sim::compare_reports(all[0], all[1]);
  }
  bool ok = true;
  for (const auto& v : verdicts) {
    std::cout << v.to_string() << "\n";
    ok = ok && v.pass;
  }
  return ok ? kOk : kValidation;
}

int monitor_cmd(const Options& o) {
  metrics::PassiveMonitor m;
  for (const auto& f : o.files) {
    for (const auto& p : userplane::read_pcap_file(f)) m.observe(p);
  }
  std::cout << metrics::render_sessions(m);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nrusim: private 5G NR-U testbed simulator"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--data-dir", o.data_dir, "Band, regulatory and hardware data directory");

  auto* plan = app.add_subcommand("plan", "Spectrum planning queries");
  plan->require_subcommand(1);
  auto* convert = plan->add_subcommand("convert", "ARFCN, GSCN and frequency conversion");
  convert->add_option("--arfcn", o.arfcn, "NR-ARFCN to convert to MHz");
  convert->add_option("--gscn", o.gscn, "GSCN to convert to SS block MHz");
  convert->add_option("--freq", o.freq_mhz, "Frequency in MHz to convert to NR-ARFCN");
  auto* pvalidate = plan->add_subcommand("validate", "Check an ARFCN against a band's channel raster");
  pvalidate->add_option("--band", o.band)->capture_default_str();
  pvalidate->add_option("--arfcn", o.arfcn)->required();
  pvalidate->add_option("--link", o.link, "UL or DL")->capture_default_str();
  auto* scan = plan->add_subcommand("scan", "List the SS block candidates a UE scans");
  scan->add_option("--band", o.band)->capture_default_str();
  auto* check = plan->add_subcommand("check", "Regulatory check of an emission");
  check->add_option("--arfcn", o.arfcn, "Centre as NR-ARFCN");
  check->add_option("--freq", o.freq_mhz, "Centre in MHz");
  check->add_option("--bw", o.bandwidth_mhz, "Bandwidth in MHz")->capture_default_str();
  check->add_option("--eirp", o.eirp_mw, "Mean EIRP in mW")->required();
  check->add_flag("--outdoor", o.outdoor);
  check->add_option("--jurisdiction", o.jurisdiction)->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Lint scenario files");
  validate->add_option("scenarios", o.files)->required()->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "Run scenarios and print a report");
  run->add_option("scenarios", o.files)->required()->check(CLI::ExistingFile);
  run->add_flag("--jsonl", o.jsonl, "Print line-delimited JSON records instead of the table");
  run->add_option("--out", o.jsonl_out, "Also write JSON records to this file");
  run->add_option("--log-dir", o.log_dir, "Write each scenario's event log here");
  run->add_option("--pcap-dir", o.pcap_dir, "Write one pcap per tap here");

  auto* compare = app.add_subcommand("compare", "Ordering verdicts between reports");
  compare->add_option("reports", o.files, "JSON record files from run --out")->required()->check(CLI::ExistingFile);
  compare->add_option("--expect", o.expect, "Expectation file, one ordering per line")->check(CLI::ExistingFile);

  auto* monitor = app.add_subcommand("monitor", "Passive per-flow RTT over pcap files");
  monitor->add_option("pcaps", o.files)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    if (convert->parsed()) return plan_convert(o);
    if (pvalidate->parsed()) return plan_validate(o);
    if (scan->parsed()) return plan_scan(o);
    if (check->parsed()) return plan_check(o);
    if (validate->parsed()) return validate_cmd(o);
    if (run->parsed()) return run_cmd(o);
    if (compare->parsed()) return compare_cmd(o);
    if (monitor->parsed()) return monitor_cmd(o);
  } catch (const InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kBreach;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
