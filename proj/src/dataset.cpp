#include "greeneval/dataset.hpp"

#include <map>
#include <set>

#include "greeneval/csv.hpp"
#include "greeneval/text.hpp"

namespace greeneval::dataset {

namespace {

constexpr std::string_view kMetaPrefix = "config_meta.";
constexpr std::string_view kMetricPrefix = "metric.";

const std::vector<std::string>& standard_columns() {
  static const std::vector<std::string> kColumns{
      "label",       "hardware",     "gpu_count",      "max_power_watts", "train_hours",
      "mos",         "quality_loss", "e_train_kwh",    "e_train_method",  "e_gen_wh",
      "gen_workload", "param_count"};
  return kColumns;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kParse, "records: line " + std::to_string(line) + ": " + message);
}

int declared_version(std::string_view document) {
  for (auto line : text::split_lines(document)) {
    line = text::trim(line);
    if (line.empty()) continue;
    if (line.front() != '#') break;
    line.remove_prefix(1);
    line = text::trim(line);
    constexpr std::string_view kKey = "format_version:";
    if (line.starts_with(kKey)) {
      const auto v = text::parse_int(line.substr(kKey.size()));
      if (!v) throw Error(ErrorCode::kParse, "records: malformed format_version comment");
      return static_cast<int>(*v);
    }
  }
  return kFormatVersion;
}

std::optional<double> number_cell(const std::string& cell, std::size_t line, const std::string& column) {
  if (text::trim(cell).empty()) return std::nullopt;
  const auto v = text::parse_double(cell);
  if (!v) parse_error(line, "column '" + column + "': '" + cell + "' is not a number");
  return v;
}

std::optional<std::int64_t> int_cell(const std::string& cell, std::size_t line, const std::string& column) {
  if (text::trim(cell).empty()) return std::nullopt;
  const auto v = text::parse_int(cell);
  if (!v) parse_error(line, "column '" + column + "': '" + cell + "' is not an integer");
  return v;
}

csv::Cell num(const std::optional<double>& v) {
  return v ? csv::Cell::number(text::format_double(*v)) : csv::Cell::empty();
}

}  // namespace

Dataset parse_dataset(std::string_view document, const hardware::Catalog& catalog, std::string source) {
  Dataset ds;
  ds.source = std::move(source);
  ds.format_version = declared_version(document);
  if (ds.format_version != kFormatVersion) {
    throw Error(ErrorCode::kParse, "records: unsupported format_version " +
                                       std::to_string(ds.format_version));
  }

  const auto rows = csv::parse(document);
  if (rows.empty()) throw Error(ErrorCode::kParse, "records: missing header row");
  const auto& header = rows.front();

  const std::set<std::string> known(standard_columns().begin(), standard_columns().end());
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const std::string name(text::trim(header.fields[i]));
    const bool prefixed = (name.starts_with(kMetaPrefix) && name.size() > kMetaPrefix.size()) ||
                          (name.starts_with(kMetricPrefix) && name.size() > kMetricPrefix.size());
    if (!known.contains(name) && !prefixed) parse_error(header.line, "unknown column '" + name + "'");
    if (!col.emplace(name, i).second) parse_error(header.line, "duplicate column '" + name + "'");
  }
  for (const char* required : {"label", "hardware"}) {
    if (!col.contains(required)) {
      parse_error(header.line, std::string("missing required column '") + required + "'");
    }
  }

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.fields.size()) {
      parse_error(row.line, "expected " + std::to_string(header.fields.size()) + " fields, got " +
                                std::to_string(row.fields.size()));
    }
    const auto cell = [&](const std::string& name) -> std::string {
      const auto it = col.find(name);
      return it == col.end() ? std::string() : row.fields[it->second];
    };

    RunRecord rec;
    rec.label = std::string(text::trim(cell("label")));
    rec.hardware_name = std::string(text::trim(cell("hardware")));
    if (const auto n = int_cell(cell("gpu_count"), row.line, "gpu_count")) rec.gpu_count = *n;
    rec.max_power_watts = number_cell(cell("max_power_watts"), row.line, "max_power_watts");
    rec.train_hours = number_cell(cell("train_hours"), row.line, "train_hours");
    rec.mos = number_cell(cell("mos"), row.line, "mos");
    rec.quality_loss = number_cell(cell("quality_loss"), row.line, "quality_loss");
    rec.e_train_kwh = number_cell(cell("e_train_kwh"), row.line, "e_train_kwh");
    const std::string method(text::trim(cell("e_train_method")));
    if (!method.empty()) {
      rec.e_train_method = parse_method(method);
      if (!rec.e_train_method) parse_error(row.line, "unknown e_train_method '" + method + "'");
    }
    rec.e_gen_wh = number_cell(cell("e_gen_wh"), row.line, "e_gen_wh");
    rec.gen_workload_desc = cell("gen_workload");
    rec.param_count = int_cell(cell("param_count"), row.line, "param_count");
    for (const auto& [name, index] : col) {
      if (name.starts_with(kMetaPrefix)) {
        const auto& v = row.fields[index];
        if (!v.empty()) rec.config_meta[name.substr(kMetaPrefix.size())] = v;
      } else if (name.starts_with(kMetricPrefix)) {
        if (const auto v = number_cell(row.fields[index], row.line, name)) {
          rec.metrics[name.substr(kMetricPrefix.size())] = *v;
        }
      }
    }
    if (!rec.max_power_watts) {
      if (const auto entry = catalog.lookup(rec.hardware_name)) rec.max_power_watts = entry->max_power_watts;
    }
    ds.records.push_back(std::move(rec));
  }

  const auto violations = validate_records(ds.records);
  if (!violations.empty()) {
    std::string message = "records: invalid dataset";
    for (const auto& v : violations) message += "; " + v;
    throw Error(ErrorCode::kInput, message);
  }
  return ds;
}

Dataset load_dataset(const std::string& path, const hardware::Catalog& catalog) {
  return parse_dataset(text::read_file(path), catalog, path);
}

std::string serialize_dataset(const Dataset& ds) {
  std::set<std::string> meta_keys;
  std::set<std::string> metric_keys;
  for (const auto& r : ds.records) {
    for (const auto& [k, v] : r.config_meta) meta_keys.insert(k);
    for (const auto& [k, v] : r.metrics) metric_keys.insert(k);
  }

  std::string out = "# format_version: " + std::to_string(ds.format_version) + "\n";
  std::vector<csv::Cell> header;
  for (const auto& c : standard_columns()) header.push_back(csv::Cell::text(c));
  for (const auto& k : meta_keys) header.push_back(csv::Cell::text(std::string(kMetaPrefix) + k));
  for (const auto& k : metric_keys) header.push_back(csv::Cell::text(std::string(kMetricPrefix) + k));
  out += csv::format_row(header);

  for (const auto& r : ds.records) {
    std::vector<csv::Cell> cells{
        csv::Cell::text(r.label),
        csv::Cell::text(r.hardware_name),
        csv::Cell::number(std::to_string(r.gpu_count)),
        num(r.max_power_watts),
        num(r.train_hours),
        num(r.mos),
        num(r.quality_loss),
        num(r.e_train_kwh),
        r.e_train_method ? csv::Cell::text(std::string(method_name(*r.e_train_method)))
                         : csv::Cell::empty(),
        num(r.e_gen_wh),
        r.gen_workload_desc.empty() ? csv::Cell::empty() : csv::Cell::text(r.gen_workload_desc),
        r.param_count ? csv::Cell::number(std::to_string(*r.param_count)) : csv::Cell::empty(),
    };
    for (const auto& k : meta_keys) {
      const auto it = r.config_meta.find(k);
      cells.push_back(it == r.config_meta.end() ? csv::Cell::empty() : csv::Cell::text(it->second));
    }
    for (const auto& k : metric_keys) {
      const auto it = r.metrics.find(k);
      cells.push_back(it == r.metrics.end() ? csv::Cell::empty()
                                            : csv::Cell::number(text::format_double(it->second)));
    }
    out += csv::format_row(cells);
  }
  return out;
}

}  // namespace greeneval::dataset
