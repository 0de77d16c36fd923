#include "greeneval/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace greeneval {

namespace {

[[noreturn]] void domain_error(const std::string& message) {
  throw Error(ErrorCode::kDomain, message);
}

bool in_mos_range(double mos) {
  return std::isfinite(mos) && mos >= QualityScore::kMosMin && mos <= QualityScore::kMosMax;
}

bool in_loss_range(double loss) {
  return std::isfinite(loss) && loss >= 0.0 && loss <= QualityScore::kLossMax;
}

bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

HardwareSpec::HardwareSpec(std::string name, double max_power_watts, std::int64_t count)
    : name_(std::move(name)), max_power_watts_(max_power_watts), count_(count) {
  if (!(std::isfinite(max_power_watts_) && max_power_watts_ > 0.0)) {
    domain_error("max_power_watts must be > 0 (hardware '" + name_ + "')");
  }
  if (count_ < 1) domain_error("count must be >= 1 (hardware '" + name_ + "')");
}

QualityScore QualityScore::from_mos(double mos) {
  if (!in_mos_range(mos)) domain_error("mos must lie in [1,5]");
  return QualityScore(mos, 1.0 - mos / kMosMax);
}

QualityScore QualityScore::from_loss(double loss) {
  if (!in_loss_range(loss)) domain_error("quality_loss must lie in [0,0.8]");
  // 5 * (1 - 0.8) rounds just below 1; keep the MOS inside its range.
  return QualityScore(std::clamp(kMosMax * (1.0 - loss), kMosMin, kMosMax), loss);
}

std::string_view method_name(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kWorstCaseSpec: return "worst_case_spec";
    case EstimateMethod::kMeasuredIntegrated: return "measured_integrated";
    case EstimateMethod::kMeasuredExtrapolated: return "measured_extrapolated";
  }
  return "unknown";
}

std::optional<EstimateMethod> parse_method(std::string_view text) {
  for (auto m : {EstimateMethod::kWorstCaseSpec, EstimateMethod::kMeasuredIntegrated,
                 EstimateMethod::kMeasuredExtrapolated}) {
    if (method_name(m) == text) return m;
  }
  return std::nullopt;
}

EnergyEstimate::EnergyEstimate(double value, EnergyUnit unit, EstimateMethod method)
    : value_(value), unit_(unit), method_(method) {
  if (!nonnegative(value_)) domain_error("energy must be >= 0");
}

CarbonIntensity::CarbonIntensity(std::string region_name, double intensity)
    : region(std::move(region_name)), g_co2_per_kwh(intensity) {
  if (!nonnegative(g_co2_per_kwh)) domain_error("g_co2_per_kwh must be >= 0");
}

PowerTrace::PowerTrace(std::span<const PowerSample> samples) {
  t_.reserve(samples.size());
  w_.reserve(samples.size());
  for (const auto& s : samples) {
    t_.push_back(s.t_seconds);
    w_.push_back(s.watts);
  }
  validate();
}

PowerTrace::PowerTrace(std::vector<double> t_seconds, std::vector<double> watts)
    : t_(std::move(t_seconds)), w_(std::move(watts)) {
  if (t_.size() != w_.size()) {
    throw Error(ErrorCode::kMalformedTrace, "time and power columns differ in length");
  }
  validate();
}

void PowerTrace::validate() const {
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!nonnegative(t_[i])) {
      throw Error(ErrorCode::kMalformedTrace,
                  "sample " + std::to_string(i) + ": t_seconds must be finite and >= 0");
    }
    if (!nonnegative(w_[i])) {
      throw Error(ErrorCode::kMalformedTrace,
                  "sample " + std::to_string(i) + ": watts must be finite and >= 0");
    }
    if (i > 0 && !(t_[i] > t_[i - 1])) {
      throw Error(ErrorCode::kMalformedTrace,
                  "sample " + std::to_string(i) + ": timestamps must be strictly increasing");
    }
  }
}

PowerTrace PowerTrace::slice(std::size_t first, std::size_t last) const {
  if (first > last || last >= size()) {
    throw Error(ErrorCode::kDomain, "trace slice out of range");
  }
  return PowerTrace(std::vector<double>(t_.begin() + first, t_.begin() + last + 1),
                    std::vector<double>(w_.begin() + first, w_.begin() + last + 1));
}

EvalPoint::EvalPoint(std::string label, std::vector<double> objectives)
    : label_(std::move(label)), objectives_(std::move(objectives)) {
  if (objectives_.empty()) {
    throw Error(ErrorCode::kDimension, "point '" + label_ + "' has no objectives");
  }
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    if (!std::isfinite(objectives_[i])) {
      throw Error(ErrorCode::kDomain, "point '" + label_ + "': objective " + std::to_string(i) +
                                          " is not finite");
    }
  }
}

HardwareSpec RunRecord::hardware() const {
  if (!max_power_watts) {
    throw Error(ErrorCode::kUnresolvedHardware,
                "record '" + label + "': no power figure for hardware '" + hardware_name + "'");
  }
  return HardwareSpec(hardware_name, *max_power_watts, gpu_count);
}

std::optional<QualityScore> RunRecord::quality() const {
  if (quality_loss) return QualityScore::from_loss(*quality_loss);
  if (mos) return QualityScore::from_mos(*mos);
  return std::nullopt;
}

std::vector<std::string> validate_record(const RunRecord& r) {
  std::vector<std::string> out;
  if (r.label.empty()) out.emplace_back("label must be non-empty");
  if (r.max_power_watts && !(std::isfinite(*r.max_power_watts) && *r.max_power_watts > 0.0)) {
    out.emplace_back("max_power_watts must be > 0");
  }
  if (r.gpu_count < 1) out.emplace_back("gpu_count must be >= 1");
  if (r.train_hours && !nonnegative(*r.train_hours)) out.emplace_back("train_hours must be >= 0");
  if (r.mos && !in_mos_range(*r.mos)) out.emplace_back("mos must lie in [1,5]");
  if (r.quality_loss && !in_loss_range(*r.quality_loss)) {
    out.emplace_back("quality_loss must lie in [0,0.8]");
  }
  if (r.mos && r.quality_loss && in_mos_range(*r.mos) && in_loss_range(*r.quality_loss) &&
      std::abs(*r.quality_loss - (1.0 - *r.mos / QualityScore::kMosMax)) > 1e-12) {
    out.emplace_back("quality_loss must equal 1 - mos/5");
  }
  if (r.e_train_kwh && !nonnegative(*r.e_train_kwh)) out.emplace_back("e_train_kwh must be >= 0");
  if (r.e_gen_wh && !nonnegative(*r.e_gen_wh)) out.emplace_back("e_gen_wh must be >= 0");
  if (r.param_count && *r.param_count < 0) out.emplace_back("param_count must be >= 0");
  for (const auto& [name, value] : r.metrics) {
    if (!std::isfinite(value)) out.emplace_back("metric." + name + " must be finite");
  }
  return out;
}

std::vector<std::string> validate_records(std::span<const RunRecord> records) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : records) {
    for (const auto& v : validate_record(r)) {
      out.push_back("record '" + r.label + "': " + v);
    }
    if (!r.label.empty() && !seen.insert(r.label).second) {
      out.push_back("record '" + r.label + "': label must be unique within the dataset");
    }
  }
  return out;
}

}  // namespace greeneval
