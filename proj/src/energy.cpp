#include "greeneval/energy.hpp"

#include <cmath>

namespace greeneval::energy {

EnergyEstimate worst_case_kwh(const HardwareSpec& hw, double hours) {
  if (!(std::isfinite(hours) && hours >= 0.0)) {
    throw Error(ErrorCode::kDomain, "hours must be finite and >= 0");
  }
  const double watts = hw.max_power_watts() * static_cast<double>(hw.count());
  return EnergyEstimate::kwh(watts * hours / 1000.0, EstimateMethod::kWorstCaseSpec);
}

double carbon_g(const EnergyEstimate& energy, const CarbonIntensity& intensity) {
  return energy.kwh() * intensity.g_co2_per_kwh;
}

Comparison estimate_vs_measured(const EnergyEstimate& estimate, const EnergyEstimate& measured) {
  Comparison c{estimate.kwh(), measured.kwh(), measured.kwh() - estimate.kwh(), std::nullopt};
  if (c.estimate_kwh > 0.0) {
    c.relative = c.delta_kwh / c.estimate_kwh;
  } else if (c.measured_kwh == 0.0) {
    c.relative = 0.0;
  }
  return c;
}

}  // namespace greeneval::energy
