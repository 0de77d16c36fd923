#pragma once

#include <optional>

#include "greeneval/core.hpp"

namespace greeneval::energy {

// Worst-case training energy: every device draws its rated maximum for the
// whole wall-clock duration. kWh = W * count * hours / 1000.
EnergyEstimate worst_case_kwh(const HardwareSpec& hw, double hours);

// Grams of CO2-equivalent for an energy amount at a regional intensity.
double carbon_g(const EnergyEstimate& energy, const CarbonIntensity& intensity);

struct Comparison {
  double estimate_kwh;
  double measured_kwh;
  double delta_kwh;  // measured - estimate
  // delta / estimate; absent when the estimate is zero and the measurement is not.
  std::optional<double> relative;
};

Comparison estimate_vs_measured(const EnergyEstimate& estimate, const EnergyEstimate& measured);

}  // namespace greeneval::energy
