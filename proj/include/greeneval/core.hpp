#pragma once

// Shared domain types for quality/energy evaluation. Everything here is
// immutable after construction; constructors enforce the invariants and throw
// greeneval::Error (kDomain) on violation.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greeneval/error.hpp"

namespace greeneval {

class HardwareSpec {
 public:
  HardwareSpec(std::string name, double max_power_watts, std::int64_t count = 1);

  const std::string& name() const { return name_; }
  double max_power_watts() const { return max_power_watts_; }
  std::int64_t count() const { return count_; }

  friend bool operator==(const HardwareSpec&, const HardwareSpec&) = default;

 private:
  std::string name_;
  double max_power_watts_;
  std::int64_t count_;
};

// Subjective quality on the MOS scale together with its minimization form
// 1 - MOS/5. Built through quality::normalize_mos or QualityScore::from_loss.
class QualityScore {
 public:
  static constexpr double kMosMin = 1.0;
  static constexpr double kMosMax = 5.0;
  static constexpr double kLossMax = 1.0 - kMosMin / kMosMax;

  static QualityScore from_mos(double mos);
  // Keeps the ingested loss bit-for-bit; mos is derived from it.
  static QualityScore from_loss(double loss);

  double mos() const { return mos_; }
  double normalized_loss() const { return loss_; }

  friend bool operator==(const QualityScore&, const QualityScore&) = default;

 private:
  QualityScore(double mos, double loss) : mos_(mos), loss_(loss) {}
  double mos_;
  double loss_;
};

enum class EstimateMethod { kWorstCaseSpec, kMeasuredIntegrated, kMeasuredExtrapolated };

std::string_view method_name(EstimateMethod method);
std::optional<EstimateMethod> parse_method(std::string_view text);

enum class EnergyUnit { kWh, kKWh };

// An energy amount tagged with its unit and with how it was obtained.
// Values are kept in the unit they were produced in; kwh()/wh() convert.
class EnergyEstimate {
 public:
  EnergyEstimate(double value, EnergyUnit unit, EstimateMethod method);

  static EnergyEstimate kwh(double kwh, EstimateMethod method) {
    return EnergyEstimate(kwh, EnergyUnit::kKWh, method);
  }
  static EnergyEstimate wh(double wh, EstimateMethod method) {
    return EnergyEstimate(wh, EnergyUnit::kWh, method);
  }

  double value() const { return value_; }
  EnergyUnit unit() const { return unit_; }
  EstimateMethod method() const { return method_; }

  double kwh() const { return unit_ == EnergyUnit::kKWh ? value_ : value_ / 1000.0; }
  double wh() const { return unit_ == EnergyUnit::kWh ? value_ : value_ * 1000.0; }

  friend bool operator==(const EnergyEstimate&, const EnergyEstimate&) = default;

 private:
  double value_;
  EnergyUnit unit_;
  EstimateMethod method_;
};

struct CarbonIntensity {
  CarbonIntensity(std::string region, double g_co2_per_kwh);

  std::string region;
  double g_co2_per_kwh;
};

struct PowerSample {
  double t_seconds;
  double watts;
};

// Time-ordered power samples, stored column-wise so the integration kernels
// can stream over them.
class PowerTrace {
 public:
  PowerTrace() = default;
  // Throws kMalformedTrace if timestamps are not strictly increasing or any
  // value is negative or non-finite.
  explicit PowerTrace(std::span<const PowerSample> samples);
  PowerTrace(std::vector<double> t_seconds, std::vector<double> watts);

  std::size_t size() const { return t_.size(); }
  bool empty() const { return t_.empty(); }
  PowerSample operator[](std::size_t i) const { return {t_[i], w_[i]}; }
  std::span<const double> times() const { return t_; }
  std::span<const double> watts() const { return w_; }

  // Samples [first, last] inclusive.
  PowerTrace slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const PowerTrace&, const PowerTrace&) = default;

 private:
  void validate() const;
  std::vector<double> t_;
  std::vector<double> w_;
};

// A labeled point in a k-objective minimization space.
class EvalPoint {
 public:
  EvalPoint(std::string label, std::vector<double> objectives);

  const std::string& label() const { return label_; }
  std::span<const double> objectives() const { return objectives_; }
  std::size_t dimension() const { return objectives_.size(); }
  double operator[](std::size_t i) const { return objectives_[i]; }

  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;

 private:
  std::string label_;
  std::vector<double> objectives_;
};

// One model configuration's evaluation record. Plain aggregate: construction
// does not validate, use validate_record() for that.
struct RunRecord {
  std::string label;
  std::map<std::string, std::string> config_meta;
  std::string hardware_name;
  // Filled from the hardware catalog when not given explicitly.
  std::optional<double> max_power_watts;
  std::int64_t gpu_count = 1;
  std::optional<double> train_hours;
  // Quality as ingested: either MOS or 1 - MOS/5 (or both, if consistent).
  std::optional<double> mos;
  std::optional<double> quality_loss;
  std::optional<double> e_train_kwh;
  std::optional<EstimateMethod> e_train_method;
  std::optional<double> e_gen_wh;
  std::string gen_workload_desc;
  std::optional<std::int64_t> param_count;
  // Extra named metrics (for user-declared objectives), raw values.
  std::map<std::string, double> metrics;

  // Throws kUnresolvedHardware when no power figure is attached.
  HardwareSpec hardware() const;
  // Prefers the ingested loss so it is never re-derived through MOS.
  std::optional<QualityScore> quality() const;
};

// Returns one message per broken invariant; empty when the record is valid.
std::vector<std::string> validate_record(const RunRecord& record);

// Dataset-level check: validate_record on each record plus label uniqueness.
std::vector<std::string> validate_records(std::span<const RunRecord> records);

}  // namespace greeneval
