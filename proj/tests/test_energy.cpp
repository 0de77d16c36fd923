#include <doctest.h>

#include <cmath>
#include <random>

#include "greeneval/energy.hpp"

using namespace greeneval;
using namespace greeneval::energy;

TEST_CASE("worst-case kWh reproduces the published training-cost rows") {
  struct Row {
    const char* model;
    double watts;
    std::int64_t count;
    double hours;
    double kwh;
  };
  const Row rows[] = {
      {"FloWaveNet", 300, 1, 272, 81.6}, {"GANSynth", 300, 1, 108, 32.4},
      {"SampleRNN", 250, 1, 168, 42.0},  {"SING", 250, 4, 52, 52.0},
      {"WaveGAN", 250, 1, 96, 24.0},
  };
  for (const auto& r : rows) {
    CAPTURE(r.model);
    const auto e = worst_case_kwh(HardwareSpec(r.model, r.watts, r.count), r.hours);
    CHECK(e.kwh() == r.kwh);  // exact decimal products
    CHECK(e.method() == EstimateMethod::kWorstCaseSpec);
  }
}

TEST_CASE("worst-case kWh edge cases") {
  const HardwareSpec v100("V100", 300.0, 1);
  CHECK(worst_case_kwh(v100, 0.0).kwh() == 0.0);
  CHECK_THROWS_AS(worst_case_kwh(v100, -1.0), Error);
  CHECK_THROWS_AS(worst_case_kwh(v100, std::nan("")), Error);
}

TEST_CASE("worst-case kWh is linear in hours and device count") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> hours(0.0, 5000.0);
  std::uniform_real_distribution<double> watts(1.0, 700.0);
  for (int i = 0; i < 1000; ++i) {
    const HardwareSpec hw("gpu", watts(rng), 1 + i % 8);
    const double a = hours(rng);
    const double b = hours(rng);
    const double whole = worst_case_kwh(hw, a + b).kwh();
    const double parts = worst_case_kwh(hw, a).kwh() + worst_case_kwh(hw, b).kwh();
    CHECK(std::abs(whole - parts) <= 1e-9);

    const HardwareSpec doubled("gpu", hw.max_power_watts(), hw.count() * 2);
    CHECK(worst_case_kwh(doubled, a).kwh() == 2.0 * worst_case_kwh(hw, a).kwh());
  }
}

TEST_CASE("carbon grams scale energy by intensity") {
  const auto e816 = EnergyEstimate::kwh(81.6, EstimateMethod::kWorstCaseSpec);
  CHECK(carbon_g(e816, CarbonIntensity("zero", 0.0)) == 0.0);
  CHECK(carbon_g(EnergyEstimate::kwh(1.0, EstimateMethod::kWorstCaseSpec),
                 CarbonIntensity("fixture", 500.0)) == 500.0);
  CHECK(carbon_g(EnergyEstimate::kwh(42.0, EstimateMethod::kWorstCaseSpec),
                 CarbonIntensity("fixture", 300.0)) == doctest::Approx(12600.0).epsilon(1e-12));
  // Unit tags are honored: 500 Wh at 500 g/kWh is 250 g.
  CHECK(carbon_g(EnergyEstimate::wh(500.0, EstimateMethod::kMeasuredIntegrated),
                 CarbonIntensity("fixture", 500.0)) == 250.0);
}

TEST_CASE("estimate versus measured") {
  const auto est = EnergyEstimate::kwh(52.0, EstimateMethod::kWorstCaseSpec);
  const auto meas = EnergyEstimate::kwh(64.8, EstimateMethod::kMeasuredIntegrated);
  const auto c = estimate_vs_measured(est, meas);
  CHECK(c.delta_kwh == doctest::Approx(12.8).epsilon(1e-12));
  REQUIRE(c.relative);
  CHECK(std::abs(*c.relative - 0.2462) <= 1e-4);

  const auto same = estimate_vs_measured(est, EnergyEstimate::kwh(52.0, EstimateMethod::kMeasuredIntegrated));
  CHECK(same.delta_kwh == 0.0);
  REQUIRE(same.relative);
  CHECK(*same.relative == 0.0);

  const auto undefined = estimate_vs_measured(EnergyEstimate::kwh(0.0, EstimateMethod::kWorstCaseSpec),
                                              EnergyEstimate::kwh(5.0, EstimateMethod::kMeasuredIntegrated));
  CHECK(undefined.delta_kwh == 5.0);
  CHECK_FALSE(undefined.relative);
}
