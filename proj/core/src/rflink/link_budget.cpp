/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/rflink/link_budget.hpp"

#include <cmath>

#include "nrusim/common/error.hpp"

namespace nrusim::rflink {

double reference_path_loss_db(Frequency carrier) {
  // Free-space loss at d0 = 1 m: 20 log10(f_MHz) - 27.55 dB.
  return 20.0 * std::log10(carrier.mhz()) - 27.55;
}

double medium_loss_db(const LinkMedium& medium, Frequency carrier, const RadioModel& model) {
  medium.validate();
  if (const auto* air = std::get_if<OverAir>(&medium.kind)) {
    if (carrier.khz() <= 0) throw DomainError("carrier frequency must be positive");
    return reference_path_loss_db(carrier) + 10.0 * model.path_loss_exponent * std::log10(air->distance_m);
  }
  const auto& c = std::get<Cable>(medium.kind);
  return c.attenuator_db + model.cable_loss_db_per_m * (c.length_cm / 100.0);
}

double compute_rsrp(double tx_power_dbm, double attenuation_factor, const LinkMedium& medium,
                    Frequency carrier, const RadioModel& model) {
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(attenuation_factor)) {
    throw DomainError("transmit power and attenuation factor must be finite");
  }
  if (attenuation_factor < 0.0) throw DomainError("attenuation factor must be non-negative");
  return tx_power_dbm - model.db_per_attenuation_unit * attenuation_factor -
         medium_loss_db(medium, carrier, model);
}

}  // namespace nrusim::rflink
