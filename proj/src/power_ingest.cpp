#include "greeneval/power_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "greeneval/kernels/kernels.hpp"
#include "greeneval/text.hpp"

namespace greeneval::power {

namespace {

constexpr double kSecondsPerHour = 3600.0;

void require_integrable(const PowerTrace& trace) {
  if (trace.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "power trace needs at least 2 samples to integrate (got " +
                    std::to_string(trace.size()) + ")");
  }
}

void validate_marks(const PowerTrace& trace, std::span<const EpochMark> marks) {
  require_integrable(trace);
  if (marks.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "at least 2 epoch marks (one completed epoch) are required");
  }
  const double lo = trace.times().front();
  const double hi = trace.times().back();
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const auto& m = marks[i];
    if (m.epoch_index < 0) {
      throw Error(ErrorCode::kDomain, "mark " + std::to_string(i) + ": epoch_index must be >= 0");
    }
    if (!(m.t_seconds >= lo && m.t_seconds <= hi)) {
      throw Error(ErrorCode::kDomain,
                  "mark " + std::to_string(i) + ": t_seconds lies outside the trace time span");
    }
    if (i > 0 && !(m.epoch_index > marks[i - 1].epoch_index && m.t_seconds > marks[i - 1].t_seconds)) {
      throw Error(ErrorCode::kDomain,
                  "mark " + std::to_string(i) + ": marks must be strictly increasing in index and time");
    }
  }
}

struct Row {
  std::size_t line;
  std::string_view first;
  std::string_view second;
};

// Splits a two-column document into data rows, dropping comments, blanks and
// an optional header line.
std::vector<Row> two_column_rows(std::string_view document, std::string_view what) {
  std::vector<Row> rows;
  bool seen_data = false;
  const auto lines = text::split_lines(document);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse, std::string(what) + ": line " + std::to_string(line_no) +
                                         ": expected exactly 2 comma-separated fields");
    }
    Row row{line_no, text::trim(line.substr(0, comma)), text::trim(line.substr(comma + 1))};
    if (!seen_data && !text::parse_double(row.first)) {
      seen_data = true;  // header line
      continue;
    }
    seen_data = true;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

EnergyEstimate integrate_trace(const PowerTrace& trace) {
  require_integrable(trace);
  const double twice_joules = kernels::trapezoid_sum2(trace.times(), trace.watts());
  return EnergyEstimate::wh(twice_joules / (2.0 * kSecondsPerHour),
                            EstimateMethod::kMeasuredIntegrated);
}

double power_at(const PowerTrace& trace, double t) {
  require_integrable(trace);
  const auto times = trace.times();
  const auto watts = trace.watts();
  if (!(t >= times.front() && t <= times.back())) {
    throw Error(ErrorCode::kDomain, "time lies outside the trace time span");
  }
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  const auto i = static_cast<std::size_t>(it - times.begin());
  if (times[i] == t) return watts[i];
  const double frac = (t - times[i - 1]) / (times[i] - times[i - 1]);
  return watts[i - 1] + frac * (watts[i] - watts[i - 1]);
}

double integrate_span_wh(const PowerTrace& trace, double t_begin, double t_end) {
  require_integrable(trace);
  if (!(t_begin <= t_end)) throw Error(ErrorCode::kDomain, "span end precedes its start");
  const double w_begin = power_at(trace, t_begin);
  const double w_end = power_at(trace, t_end);
  if (t_begin == t_end) return 0.0;

  const auto times = trace.times();
  const auto watts = trace.watts();
  // Samples strictly inside (t_begin, t_end).
  const auto first = static_cast<std::size_t>(
      std::upper_bound(times.begin(), times.end(), t_begin) - times.begin());
  const auto last = static_cast<std::size_t>(
      std::lower_bound(times.begin(), times.end(), t_end) - times.begin());

  double twice_joules = 0.0;
  if (first >= last) {
    twice_joules = (t_end - t_begin) * (w_begin + w_end);
  } else {
    twice_joules = (times[first] - t_begin) * (w_begin + watts[first]);
    twice_joules += kernels::trapezoid_sum2(times.subspan(first, last - first),
                                            watts.subspan(first, last - first));
    twice_joules += (t_end - times[last - 1]) * (watts[last - 1] + w_end);
  }
  return twice_joules / (2.0 * kSecondsPerHour);
}

std::vector<double> segment_energies_wh(const PowerTrace& trace, std::span<const EpochMark> marks) {
  validate_marks(trace, marks);
  std::vector<double> out;
  out.reserve(marks.size() - 1);
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    out.push_back(integrate_span_wh(trace, marks[i].t_seconds, marks[i + 1].t_seconds));
  }
  return out;
}

EnergyEstimate extrapolate_training(const PowerTrace& trace, std::span<const EpochMark> marks,
                                    std::int64_t total_epochs) {
  const auto segments = segment_energies_wh(trace, marks);
  const std::int64_t completed = marks.back().epoch_index - marks.front().epoch_index;
  if (total_epochs < 1 || total_epochs < completed) {
    throw Error(ErrorCode::kDomain, "total_epochs (" + std::to_string(total_epochs) +
                                        ") must be >= completed epochs (" +
                                        std::to_string(completed) + ") and >= 1");
  }
  double measured_wh = 0.0;
  for (double e : segments) measured_wh += e;
  const double mean_epoch_wh = measured_wh / static_cast<double>(completed);
  return EnergyEstimate::kwh(mean_epoch_wh * static_cast<double>(total_epochs) / 1000.0,
                             EstimateMethod::kMeasuredExtrapolated);
}

std::vector<Gap> find_gaps(const PowerTrace& trace, double threshold_s) {
  std::vector<Gap> gaps;
  const auto times = trace.times();
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    if (dt > threshold_s) gaps.push_back({i, times[i], dt});
  }
  return gaps;
}

PowerTrace parse_trace(std::string_view document) {
  std::vector<double> t;
  std::vector<double> w;
  for (const auto& row : two_column_rows(document, "trace")) {
    const std::string where = "trace: line " + std::to_string(row.line);
    const auto ts = text::parse_double(row.first);
    const auto ws = text::parse_double(row.second);
    if (!ts || !ws) throw Error(ErrorCode::kParse, where + ": fields must be numbers");
    const std::string sample = " (sample " + std::to_string(t.size()) + ")";
    if (!std::isfinite(*ts) || *ts < 0.0) {
      throw Error(ErrorCode::kMalformedTrace, where + sample + ": t_seconds must be >= 0");
    }
    if (!std::isfinite(*ws) || *ws < 0.0) {
      throw Error(ErrorCode::kMalformedTrace, where + sample + ": watts must be >= 0");
    }
    if (!t.empty() && !(*ts > t.back())) {
      throw Error(ErrorCode::kMalformedTrace,
                  where + sample + ": timestamps must be strictly increasing");
    }
    t.push_back(*ts);
    w.push_back(*ws);
  }
  return PowerTrace(std::move(t), std::move(w));
}

std::string serialize_trace(const PowerTrace& trace) {
  std::string out = "t_seconds,watts\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += text::format_double(trace[i].t_seconds) + "," + text::format_double(trace[i].watts) + "\n";
  }
  return out;
}

std::vector<EpochMark> parse_marks(std::string_view document) {
  std::vector<EpochMark> marks;
  for (const auto& row : two_column_rows(document, "marks")) {
    const std::string where = "marks: line " + std::to_string(row.line);
    const auto index = text::parse_int(row.first);
    const auto ts = text::parse_double(row.second);
    if (!index || !ts) {
      throw Error(ErrorCode::kParse, where + ": expected integer epoch_index and numeric t_seconds");
    }
    marks.push_back({*index, *ts});
  }
  return marks;
}

std::string serialize_marks(std::span<const EpochMark> marks) {
  std::string out = "epoch_index,t_seconds\n";
  for (const auto& m : marks) {
    out += std::to_string(m.epoch_index) + "," + text::format_double(m.t_seconds) + "\n";
  }
  return out;
}

}  // namespace greeneval::power
