#pragma once

// Measured-energy path: recorded power traces are integrated with the
// trapezoidal rule (exact for piecewise-linear draw) and partial training
// runs are extrapolated from their completed epochs.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greeneval/core.hpp"

namespace greeneval::power {

struct EpochMark {
  std::int64_t epoch_index;
  double t_seconds;

  friend bool operator==(const EpochMark&, const EpochMark&) = default;
};

// Watt-hours over the whole trace, method = measured_integrated.
// Throws kInsufficientData for fewer than two samples.
EnergyEstimate integrate_trace(const PowerTrace& trace);

// Watt-hours between two instants inside the trace, with the draw linearly
// interpolated at the boundaries.
double integrate_span_wh(const PowerTrace& trace, double t_begin, double t_end);

// Linear interpolation of the power draw at time t (t within the trace span).
double power_at(const PowerTrace& trace, double t);

// Energy (Wh) of each segment between consecutive marks.
std::vector<double> segment_energies_wh(const PowerTrace& trace, std::span<const EpochMark> marks);

// Mean energy per completed epoch times total_epochs, in kWh with
// method = measured_extrapolated. Completed epochs are counted from the first
// to the last mark's epoch index.
EnergyEstimate extrapolate_training(const PowerTrace& trace, std::span<const EpochMark> marks,
                                    std::int64_t total_epochs);

struct Gap {
  std::size_t after_sample;  // gap lies between this sample and the next
  double t_seconds;
  double duration_s;
};

inline constexpr double kDefaultGapThresholdS = 60.0;

// Sampling intervals strictly longer than the threshold. They are still
// integrated as-is; callers report them as warnings.
std::vector<Gap> find_gaps(const PowerTrace& trace, double threshold_s = kDefaultGapThresholdS);

// Trace file: one `t_seconds,watts` sample per line, `#` comment lines and
// blank lines ignored, optional header line (detected when the first data
// line is not numeric). Errors carry the 1-based line number.
PowerTrace parse_trace(std::string_view document);
std::string serialize_trace(const PowerTrace& trace);

// Epoch-mark file: `epoch_index,t_seconds` lines, same comment/header rules.
std::vector<EpochMark> parse_marks(std::string_view document);
std::string serialize_marks(std::span<const EpochMark> marks);

}  // namespace greeneval::power
