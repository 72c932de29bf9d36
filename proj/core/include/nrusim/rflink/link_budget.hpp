/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "nrusim/common/units.hpp"
#include "nrusim/rflink/hardware.hpp"

namespace nrusim::rflink {

/// Loss parameters of the link-budget model.
struct RadioModel {
  /// dB of transmit attenuation per unit of the attenuation-factor setting.
  double db_per_attenuation_unit = 1.0;
  double cable_loss_db_per_m = 0.5;
  /// Log-distance exponent; 2 is free space.
  double path_loss_exponent = 2.0;
};

/// Path loss at 1 m in free space for the carrier.
double reference_path_loss_db(Frequency carrier);

/// Loss contributed by the medium alone.
double medium_loss_db(const LinkMedium& medium, Frequency carrier, const RadioModel& model = {});

/// rsrp = tx_power - attenuation(attenuation_factor) - medium_loss.
double compute_rsrp(double tx_power_dbm, double attenuation_factor, const LinkMedium& medium,
                    Frequency carrier, const RadioModel& model = {});

}  // namespace nrusim::rflink
