/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

// Internal helpers for reading YAML data files with field/line diagnostics.

#include <yaml-cpp/yaml.h>

#include <optional>
#include <string>

#include "nrusim/common/error.hpp"

namespace nrusim::detail {

inline int line_of(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.line >= 0 ? m.line + 1 : 0;
}

inline YAML::Node load_yaml_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw ValidationError(path, e.mark.line + 1, e.msg);
  }
}

inline YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& path) {
  if (!parent.IsMap()) throw ValidationError(path, line_of(parent), "expected a mapping");
  YAML::Node n = parent[key];
  if (!n) throw ValidationError(path + "." + key, line_of(parent), "missing required field");
  return n;
}

template <typename T>
T as(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ValidationError(path, line_of(n), "wrong type for field");
  }
}

template <typename T>
T get(const YAML::Node& parent, const std::string& key, const std::string& path) {
  return as<T>(require(parent, key, path), path + "." + key);
}

template <typename T>
std::optional<T> get_opt(const YAML::Node& parent, const std::string& key, const std::string& path) {
  if (!parent.IsMap()) throw ValidationError(path, line_of(parent), "expected a mapping");
  YAML::Node n = parent[key];
  if (!n) return std::nullopt;
  return as<T>(n, path + "." + key);
}

}  // namespace nrusim::detail
