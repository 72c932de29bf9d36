/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/sim/calibration.hpp"

#include "common/yaml_support.hpp"

namespace nrusim::sim {
namespace {

Micros micros(const YAML::Node& parent, const std::string& key, const std::string& path) {
  const auto v = detail::get<std::int64_t>(parent, key, path);
  if (v < 0) throw ValidationError(path + "." + key, detail::line_of(parent[key]), "must be non-negative");
  return Micros{v};
}

}  // namespace

void Calibration::validate() const {
  const auto& t = throughput;
  if (t.bits_per_re_dl <= 0 || t.bits_per_re_ul <= 0) throw ValidationError("throughput", 0, "bits per RE must be positive");
  if (t.sdr_rolloff_k < 0 || t.sdr_rolloff_k >= 1) throw ValidationError("throughput.sdr_rolloff_k", 0, "must lie in [0, 1)");
  if (t.cable_efficiency <= 0 || t.cable_efficiency > 1) {
    throw ValidationError("throughput.cable_efficiency", 0, "must lie in (0, 1]");
  }
  if (t.fluctuation_min <= 0 || t.fluctuation_min > 1) {
    throw ValidationError("throughput.fluctuation_min", 0, "must lie in (0, 1]");
  }
  if (t.interval.count() <= 0 || t.window < t.interval || t.window.count() % t.interval.count() != 0) {
    throw ValidationError("throughput.window_us", 0, "must be a positive multiple of interval_us");
  }
  if (viability_threshold < 0 || viability_threshold >= 1) {
    throw ValidationError("viability_threshold", 0, "must lie in [0, 1)");
  }
}

Calibration Calibration::load(const std::string& path) {
  const YAML::Node root = detail::load_yaml_file(path);
  if (detail::get<int>(root, "schema_version", path) != 1) {
    throw ValidationError(path + ".schema_version", detail::line_of(root["schema_version"]), "unsupported schema");
  }
  Calibration c;
  c.source = path;
  const auto lat = detail::require(root, "latency", path);
  const std::string lp = path + ".latency";
  c.latency.ue_processing = micros(lat, "ue_processing_us", lp);
  c.latency.gnb_processing = micros(lat, "gnb_processing_us", lp);
  c.latency.core_processing = micros(lat, "core_processing_us", lp);
  c.latency.ul_grant_delay = micros(lat, "ul_grant_delay_us", lp);
  c.latency.jitter_mean = micros(lat, "jitter_mean_us", lp);
  c.latency.over_air_extra = micros(lat, "over_air_extra_us", lp);
  c.latency.external_one_way = micros(lat, "external_one_way_us", lp);
  if (lat["cell_search_step_us"]) c.latency.cell_search_step = micros(lat, "cell_search_step_us", lp);
  if (lat["lbt_give_up_us"]) c.latency.lbt_give_up = micros(lat, "lbt_give_up_us", lp);

  const auto tp = detail::require(root, "throughput", path);
  const std::string tpp = path + ".throughput";
  c.throughput.bits_per_re_dl = detail::get<double>(tp, "bits_per_re_dl", tpp);
  c.throughput.bits_per_re_ul = detail::get<double>(tp, "bits_per_re_ul", tpp);
  c.throughput.sdr_rolloff_k = detail::get<double>(tp, "sdr_rolloff_k", tpp);
  c.throughput.cable_efficiency = detail::get<double>(tp, "cable_efficiency", tpp);
  c.throughput.fluctuation_min = detail::get<double>(tp, "fluctuation_min", tpp);
  c.throughput.interval = micros(tp, "interval_us", tpp);
  c.throughput.window = micros(tp, "window_us", tpp);

  const auto radio = detail::require(root, "radio", path);
  const std::string rp = path + ".radio";
  c.radio.db_per_attenuation_unit = detail::get<double>(radio, "db_per_attenuation_unit", rp);
  c.radio.cable_loss_db_per_m = detail::get<double>(radio, "cable_loss_db_per_m", rp);
  c.radio.path_loss_exponent = detail::get<double>(radio, "path_loss_exponent", rp);

  c.viability_threshold = detail::get<double>(root, "viability_threshold", path);
  c.small_packet_limit = detail::get<std::size_t>(root, "small_packet_limit_bytes", path);
  c.validate();
  return c;
}

}  // namespace nrusim::sim
