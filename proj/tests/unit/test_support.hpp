/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>

#include "nrusim/sim/scenario.hpp"

namespace nrusim::test {

inline const sim::Environment& env() {
  static const sim::Environment e = sim::Environment::load(NRUSIM_TEST_DATA_DIR);
  return e;
}

inline std::string scenario_path(const std::string& name) {
  return std::string(NRUSIM_TEST_SCENARIO_DIR) + "/" + name + ".yaml";
}

inline sim::Scenario bundled(const std::string& name) { return sim::load_scenario(scenario_path(name), env()); }

}  // namespace nrusim::test
