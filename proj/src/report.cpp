#include "greeneval/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "greeneval/csv.hpp"
#include "greeneval/text.hpp"

namespace greeneval::report {

namespace {

using csv::Cell;

std::string format_value(double v, int decimals) {
  return decimals < 0 ? text::format_double(v) : text::format_fixed(v, decimals);
}

Cell number_cell(const std::optional<double>& v, const ColumnSpec& c) {
  if (!v) return Cell::empty();
  return Cell::number(format_value(*v / c.divisor, c.decimals));
}

Cell field_cell(const RunRecord& r, const ColumnSpec& c) {
  switch (c.field) {
    case Field::kLabel: return Cell::text(r.label);
    case Field::kHardware: return Cell::text(std::to_string(r.gpu_count) + " x " + r.hardware_name);
    case Field::kGpuCount: return number_cell(static_cast<double>(r.gpu_count), c);
    case Field::kPowerW: return number_cell(r.max_power_watts, c);
    case Field::kTrainHours: return number_cell(r.train_hours, c);
    case Field::kParamCount:
      return r.param_count ? number_cell(static_cast<double>(*r.param_count), c) : Cell::empty();
    case Field::kMos: {
      const auto q = r.quality();
      return q ? number_cell(q->mos(), c) : Cell::empty();
    }
    case Field::kQualityLoss: {
      const auto q = r.quality();
      return q ? number_cell(q->normalized_loss(), c) : Cell::empty();
    }
    case Field::kETrainKwh: return number_cell(r.e_train_kwh, c);
    case Field::kETrainMethod:
      return r.e_train_method ? Cell::text(std::string(method_name(*r.e_train_method)))
                              : Cell::empty();
    case Field::kEGenWh: return number_cell(r.e_gen_wh, c);
    case Field::kGenWorkload:
      return r.gen_workload_desc.empty() ? Cell::empty() : Cell::text(r.gen_workload_desc);
  }
  return Cell::empty();
}

void check_decimals(const ReportSpec& spec) {
  for (const auto& c : spec.columns) {
    if (!(c.divisor > 0.0)) throw Error(ErrorCode::kDomain, "column '" + c.header + "': divisor must be > 0");
  }
}

int objective_decimals(const ReportSpec& spec, std::size_t d) {
  return d < spec.objective_decimals.size() ? spec.objective_decimals[d] : -1;
}

void check_dimension(std::span<const EvalPoint> points, const ReportSpec& spec) {
  if (points.empty()) return;
  const std::size_t k = points.front().dimension();
  if (!spec.objective_labels.empty() && spec.objective_labels.size() != k) {
    throw Error(ErrorCode::kDimension, "report declares " +
                                           std::to_string(spec.objective_labels.size()) +
                                           " objective labels for " + std::to_string(k) +
                                           "-objective points");
  }
  for (const auto& p : points) {
    if (p.dimension() != k) throw Error(ErrorCode::kDimension, "points differ in objective count");
  }
}

std::string objective_label(const ReportSpec& spec, std::size_t d) {
  return d < spec.objective_labels.size() ? spec.objective_labels[d] : "f" + std::to_string(d + 1);
}

struct Status {
  bool optimal = true;
  std::vector<std::string> dominators;
};

std::map<std::string, Status> status_by_label(std::span<const EvalPoint> points,
                                              const pareto::FrontResult& front) {
  std::map<std::string, Status> status;
  for (const auto& l : front.optimal) status[l] = Status{true, {}};
  for (const auto& d : front.dominated) status[d.label] = Status{false, d.dominators};
  if (status.size() != points.size()) {
    throw Error(ErrorCode::kInput, "front classification does not match the point set");
  }
  for (const auto& p : points) {
    if (!status.contains(p.label())) {
      throw Error(ErrorCode::kInput, "point '" + p.label() + "' missing from the front classification");
    }
  }
  return status;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) { return text::format_fixed(v, 2); }

struct Axis {
  double lo;
  double hi;

  double map(double v, double from, double to) const { return from + (v - lo) / (hi - lo) * (to - from); }
};

Axis axis_for(std::span<const EvalPoint> points, std::size_t d) {
  double lo = points.front()[d];
  double hi = lo;
  for (const auto& p : points) {
    lo = std::min(lo, p[d]);
    hi = std::max(hi, p[d]);
  }
  const double span = hi - lo;
  const double pad = span > 0.0 ? span * 0.08 : (lo != 0.0 ? std::fabs(lo) * 0.1 : 1.0);
  return {lo - pad, hi + pad};
}

}  // namespace

bool ReportSpec::wants(Format f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }

ReportSpec table1_spec() {
  ReportSpec spec;
  spec.columns = {{Field::kLabel, "Model"},
                  {Field::kHardware, "Hardware"},
                  {Field::kPowerW, "Power (W)"},
                  {Field::kTrainHours, "Hours"},
                  {Field::kETrainKwh, "Energy (kWh)", 1}};
  return spec;
}

ReportSpec table2_spec() {
  ReportSpec spec;
  spec.columns = {{Field::kLabel, "Model"},
                  {Field::kParamCount, "# param (M)", 2, 1e6},
                  {Field::kQualityLoss, "1-%MOS", 3},
                  {Field::kETrainKwh, "E_train (kWh)", 1},
                  {Field::kEGenWh, "E_gen (Wh)", 3}};
  return spec;
}

ReportSpec full_spec() {
  ReportSpec spec;
  spec.columns = {{Field::kLabel, "label"},
                  {Field::kHardware, "hardware"},
                  {Field::kGpuCount, "gpu_count"},
                  {Field::kPowerW, "max_power_watts"},
                  {Field::kTrainHours, "train_hours"},
                  {Field::kParamCount, "param_count"},
                  {Field::kMos, "mos"},
                  {Field::kQualityLoss, "quality_loss"},
                  {Field::kETrainKwh, "e_train_kwh"},
                  {Field::kETrainMethod, "e_train_method"},
                  {Field::kEGenWh, "e_gen_wh"},
                  {Field::kGenWorkload, "gen_workload"}};
  return spec;
}

std::string emit_table(std::span<const RunRecord> records, const ReportSpec& spec) {
  check_decimals(spec);
  std::vector<Cell> header;
  for (const auto& c : spec.columns) header.push_back(Cell::text(c.header));
  std::string out = csv::format_row(header);
  for (const auto& r : records) {
    std::vector<Cell> row;
    for (const auto& c : spec.columns) row.push_back(field_cell(r, c));
    out += csv::format_row(row);
  }
  return out;
}

std::string emit_front_table(std::span<const EvalPoint> points, const pareto::FrontResult& front,
                             const ReportSpec& spec) {
  check_dimension(points, spec);
  const auto status = status_by_label(points, front);
  const std::size_t k = points.empty() ? spec.objective_labels.size() : points.front().dimension();

  std::vector<Cell> header{Cell::text("label")};
  for (std::size_t d = 0; d < k; ++d) header.push_back(Cell::text(objective_label(spec, d)));
  header.push_back(Cell::text("status"));
  header.push_back(Cell::text("dominated_by"));
  std::string out = csv::format_row(header);

  for (const auto& p : points) {
    std::vector<Cell> row{Cell::text(p.label())};
    for (std::size_t d = 0; d < k; ++d) {
      row.push_back(Cell::number(format_value(p[d], objective_decimals(spec, d))));
    }
    const auto& s = status.at(p.label());
    row.push_back(Cell::text(s.optimal ? "optimal" : "dominated"));
    std::string doms;
    for (std::size_t i = 0; i < s.dominators.size(); ++i) doms += (i ? ";" : "") + s.dominators[i];
    row.push_back(doms.empty() ? Cell::empty() : Cell::text(doms));
    out += csv::format_row(row);
  }
  return out;
}

std::string emit_front_document(std::span<const EvalPoint> points, const pareto::FrontResult& front,
                                const ReportSpec& spec, const std::string& source) {
  using nlohmann::ordered_json;
  check_dimension(points, spec);
  const auto status = status_by_label(points, front);
  const std::size_t k = points.empty() ? spec.objective_labels.size() : points.front().dimension();

  ordered_json doc;
  doc["format_version"] = 1;
  doc["source"] = source;
  doc["dominance"] = "strict: <= in every objective and < in at least one; all objectives minimized";
  ordered_json objectives = ordered_json::array();
  for (std::size_t d = 0; d < k; ++d) objectives.push_back(objective_label(spec, d));
  doc["objectives"] = objectives;

  ordered_json pts = ordered_json::array();
  for (const auto& p : points) {
    const auto& s = status.at(p.label());
    ordered_json item;
    item["label"] = p.label();
    item["objectives"] = std::vector<double>(p.objectives().begin(), p.objectives().end());
    item["status"] = s.optimal ? "optimal" : "dominated";
    item["dominated_by"] = s.dominators;
    pts.push_back(std::move(item));
  }
  doc["points"] = pts;
  doc["optimal"] = front.optimal;
  ordered_json dominated = ordered_json::array();
  for (const auto& d : front.dominated) {
    dominated.push_back(ordered_json{{"label", d.label}, {"dominators", d.dominators}});
  }
  doc["dominated"] = dominated;
  return doc.dump(2) + "\n";
}

std::string emit_scatter(const pareto::FrontResult& front, std::span<const EvalPoint> points,
                         const ReportSpec& spec) {
  check_dimension(points, spec);
  if (!points.empty() && points.front().dimension() != 2) {
    throw Error(ErrorCode::kDimension, "scatter plots need exactly 2 objectives, got " +
                                           std::to_string(points.front().dimension()));
  }
  if (points.empty() && !spec.objective_labels.empty() && spec.objective_labels.size() != 2) {
    throw Error(ErrorCode::kDimension, "scatter plots need exactly 2 objectives");
  }
  const auto status = status_by_label(points, front);

  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 90, kRight = 600, kTop = 40, kBottom = 410;
  constexpr int kTicks = 5;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" +
         px(kHeight) + "\" viewBox=\"0 0 640 480\">\n";
  svg +=
      "<style>\n"
      "  text { font-family: sans-serif; font-size: 12px; fill: #222; }\n"
      "  .axis { stroke: #222; stroke-width: 1; }\n"
      "  .grid { stroke: #ddd; stroke-width: 1; }\n"
      "  .pareto-optimal { fill: blue; stroke: #00005a; stroke-width: 1; }\n"
      "  .pareto-dominated { fill: red; stroke: #5a0000; stroke-width: 1; }\n"
      "  .pareto-front-line { fill: none; stroke: blue; stroke-width: 1; stroke-dasharray: 4 3; }\n"
      "  .legend-optimal { fill: blue; }\n"
      "  .legend-dominated { fill: red; }\n"
      "</style>\n";
  svg += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";

  const std::string x_label = xml_escape(objective_label(spec, 0));
  const std::string y_label = xml_escape(objective_label(spec, 1));

  if (!points.empty()) {
    const Axis ax = axis_for(points, 0);
    const Axis ay = axis_for(points, 1);
    const int dx = objective_decimals(spec, 0) < 0 ? 3 : objective_decimals(spec, 0);
    const int dy = objective_decimals(spec, 1) < 0 ? 3 : objective_decimals(spec, 1);

    svg += "<g class=\"grid-lines\">\n";
    for (int i = 0; i < kTicks; ++i) {
      const double fx = ax.lo + (ax.hi - ax.lo) * i / (kTicks - 1);
      const double fy = ay.lo + (ay.hi - ay.lo) * i / (kTicks - 1);
      const std::string x = px(ax.map(fx, kLeft, kRight));
      const std::string y = px(ay.map(fy, kBottom, kTop));
      svg += "  <line class=\"grid\" x1=\"" + x + "\" y1=\"" + px(kTop) + "\" x2=\"" + x +
             "\" y2=\"" + px(kBottom) + "\"/>\n";
      svg += "  <line class=\"grid\" x1=\"" + px(kLeft) + "\" y1=\"" + y + "\" x2=\"" + px(kRight) +
             "\" y2=\"" + y + "\"/>\n";
      svg += "  <text class=\"tick-label\" x=\"" + x + "\" y=\"" + px(kBottom + 18) +
             "\" text-anchor=\"middle\">" + text::format_fixed(fx, dx) + "</text>\n";
      svg += "  <text class=\"tick-label\" x=\"" + px(kLeft - 8) + "\" y=\"" + y +
             "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + text::format_fixed(fy, dy) +
             "</text>\n";
    }
    svg += "</g>\n";

    // Front polyline through the optimal points, ordered along objective 1.
    std::vector<const EvalPoint*> optimal;
    for (const auto& p : points) {
      if (status.at(p.label()).optimal) optimal.push_back(&p);
    }
    std::sort(optimal.begin(), optimal.end(), [](const EvalPoint* a, const EvalPoint* b) {
      if ((*a)[0] != (*b)[0]) return (*a)[0] < (*b)[0];
      return (*a)[1] < (*b)[1];
    });
    if (optimal.size() > 1) {
      svg += "<polyline class=\"pareto-front-line\" points=\"";
      for (std::size_t i = 0; i < optimal.size(); ++i) {
        if (i) svg += " ";
        svg += px(ax.map((*optimal[i])[0], kLeft, kRight)) + "," +
               px(ay.map((*optimal[i])[1], kBottom, kTop));
      }
      svg += "\"/>\n";
    }

    svg += "<g class=\"points\">\n";
    for (const auto& p : points) {
      const bool is_opt = status.at(p.label()).optimal;
      const double cx = ax.map(p[0], kLeft, kRight);
      const double cy = ay.map(p[1], kBottom, kTop);
      const std::string label = xml_escape(p.label());
      svg += "  <circle class=\"" + std::string(is_opt ? "pareto-optimal" : "pareto-dominated") +
             "\" cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"5\" data-label=\"" + label +
             "\"><title>" + label + "</title></circle>\n";
      svg += "  <text class=\"point-label\" x=\"" + px(cx + 7) + "\" y=\"" + px(cy - 7) + "\">" +
             label + "</text>\n";
    }
    svg += "</g>\n";
  }

  svg += "<line class=\"axis\" x1=\"" + px(kLeft) + "\" y1=\"" + px(kBottom) + "\" x2=\"" +
         px(kRight) + "\" y2=\"" + px(kBottom) + "\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) +
         "\" y2=\"" + px(kBottom) + "\"/>\n";
  svg += "<text class=\"axis-label\" x=\"" + px((kLeft + kRight) / 2) + "\" y=\"" +
         px(kHeight - 28) + "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text class=\"axis-label\" x=\"20.00\" y=\"" + px((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20.00 " + px((kTop + kBottom) / 2) +
         ")\">" + y_label + "</text>\n";
  svg += "<g class=\"legend\">\n";
  svg += "  <rect class=\"legend-optimal\" x=\"470.00\" y=\"12.00\" width=\"10.00\" height=\"10.00\"/>\n";
  svg += "  <text x=\"485.00\" y=\"21.00\">optimal</text>\n";
  svg += "  <rect class=\"legend-dominated\" x=\"540.00\" y=\"12.00\" width=\"10.00\" height=\"10.00\"/>\n";
  svg += "  <text x=\"555.00\" y=\"21.00\">dominated</text>\n";
  svg += "</g>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace greeneval::report
