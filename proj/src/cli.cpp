#include "greeneval/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>

#include <CLI11.hpp>

#include "greeneval/csv.hpp"
#include "greeneval/kernels/kernels.hpp"
#include "greeneval/text.hpp"

namespace greeneval::cli {

namespace fs = std::filesystem;

// ---- estimate ----

EstimateResult cmd_estimate(const hardware::Catalog& catalog, const dataset::Dataset& data,
                            const std::vector<MeasuredOverride>& measured,
                            const std::optional<CarbonIntensity>& intensity) {
  std::map<std::string, double> overrides;
  for (const auto& m : measured) {
    const bool known = std::any_of(data.records.begin(), data.records.end(),
                                   [&](const RunRecord& r) { return r.label == m.label; });
    if (!known) throw Error(ErrorCode::kInput, "--measured names unknown record '" + m.label + "'");
    overrides[m.label] = m.kwh;
  }

  EstimateResult result{data, {}};
  for (auto& rec : result.dataset.records) {
    EstimateRow row{rec.label, EstimateStatus::kEstimated, std::nullopt, std::nullopt, std::nullopt};

    if (!rec.max_power_watts) {
      if (const auto entry = catalog.lookup(rec.hardware_name)) rec.max_power_watts = entry->max_power_watts;
    }
    const bool has_measured = rec.e_train_kwh.has_value() &&
                              rec.e_train_method != EstimateMethod::kWorstCaseSpec;

    if (rec.train_hours && (rec.max_power_watts || !has_measured)) {
      if (!rec.max_power_watts) {
        std::string nearest;
        for (const auto& n : catalog.nearest(rec.hardware_name)) {
          nearest += (nearest.empty() ? "" : ", ") + n;
        }
        throw Error(ErrorCode::kUnresolvedHardware,
                    "record '" + rec.label + "': hardware '" + rec.hardware_name +
                        "' is not in the catalog" +
                        (nearest.empty() ? std::string(" (catalog is empty)")
                                         : " (nearest: " + nearest + ")"));
      }
      row.worst_case = energy::worst_case_kwh(rec.hardware(), *rec.train_hours);
    }

    if (has_measured) {
      row.status = EstimateStatus::kMeasuredKept;
      if (row.worst_case) {
        const auto method = rec.e_train_method.value_or(EstimateMethod::kMeasuredIntegrated);
        row.comparison = energy::estimate_vs_measured(*row.worst_case,
                                                      EnergyEstimate::kwh(*rec.e_train_kwh, method));
      }
    } else {
      if (!row.worst_case) {
        throw Error(ErrorCode::kInput,
                    "record '" + rec.label + "': needs train_hours or a measured e_train_kwh");
      }
      rec.e_train_kwh = row.worst_case->kwh();
      rec.e_train_method = EstimateMethod::kWorstCaseSpec;
    }

    if (const auto it = overrides.find(rec.label); it != overrides.end()) {
      if (!row.worst_case) {
        throw Error(ErrorCode::kInput, "record '" + rec.label +
                                           "': --measured needs train_hours to compare against");
      }
      row.comparison = energy::estimate_vs_measured(
          *row.worst_case, EnergyEstimate::kwh(it->second, EstimateMethod::kMeasuredIntegrated));
    }

    if (intensity && rec.e_train_kwh) {
      row.carbon_g = energy::carbon_g(
          EnergyEstimate::kwh(*rec.e_train_kwh,
                              rec.e_train_method.value_or(EstimateMethod::kMeasuredIntegrated)),
          *intensity);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string format_estimate_report(const EstimateResult& result) {
  using csv::Cell;
  const bool any_comparison = std::any_of(result.rows.begin(), result.rows.end(),
                                          [](const EstimateRow& r) { return r.comparison.has_value(); });
  const bool any_carbon = std::any_of(result.rows.begin(), result.rows.end(),
                                      [](const EstimateRow& r) { return r.carbon_g.has_value(); });

  std::vector<Cell> header{Cell::text("Model"),        Cell::text("Hardware"),
                           Cell::text("Power (W)"),    Cell::text("Hours"),
                           Cell::text("Energy (kWh)"), Cell::text("Method"),
                           Cell::text("Status")};
  if (any_comparison) {
    for (const char* h : {"Worst case (kWh)", "Measured (kWh)", "Delta (kWh)", "Relative (%)"}) {
      header.push_back(Cell::text(h));
    }
  }
  if (any_carbon) header.push_back(Cell::text("Carbon (g CO2e)"));
  std::string out = csv::format_row(header);

  const auto num = [](const std::optional<double>& v, int decimals) {
    if (!v) return Cell::empty();
    return Cell::number(decimals < 0 ? text::format_double(*v) : text::format_fixed(*v, decimals));
  };

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& rec = result.dataset.records[i];
    const auto& row = result.rows[i];
    std::vector<Cell> cells{
        Cell::text(rec.label),
        Cell::text(std::to_string(rec.gpu_count) + " x " + rec.hardware_name),
        num(rec.max_power_watts, -1),
        num(rec.train_hours, -1),
        num(rec.e_train_kwh, 1),
        rec.e_train_method ? Cell::text(std::string(method_name(*rec.e_train_method)))
                           : Cell::text("measured"),
        Cell::text(row.status == EstimateStatus::kEstimated ? "estimated" : "measured"),
    };
    if (any_comparison) {
      if (row.comparison) {
        const auto& c = *row.comparison;
        cells.push_back(num(c.estimate_kwh, 1));
        cells.push_back(num(c.measured_kwh, 1));
        cells.push_back(Cell::number((c.delta_kwh >= 0 ? "+" : "") + text::format_fixed(c.delta_kwh, 1)));
        if (c.relative) {
          cells.push_back(Cell::number((*c.relative >= 0 ? "+" : "") +
                                       text::format_fixed(*c.relative * 100.0, 2)));
        } else {
          cells.push_back(Cell::text("undefined"));
        }
      } else {
        for (int k = 0; k < 4; ++k) cells.push_back(Cell::empty());
      }
    }
    if (any_carbon) cells.push_back(num(row.carbon_g, 1));
    out += csv::format_row(cells);
  }
  return out;
}

// ---- pareto ----

namespace {

struct KnownObjective {
  const char* name;
  const char* alias;
  const char* label;
  int decimals;
};

constexpr KnownObjective kKnownObjectives[] = {
    {"quality_loss", "quality_loss", "1-%MOS", 3},
    {"e_train", "e_train_kwh", "E_train (kWh)", 1},
    {"e_gen", "e_gen_wh", "E_gen (Wh)", 3},
    {"param_count", "param_count", "# param", -1},
};

constexpr std::string_view kMetricPrefix = "metric.";

struct MetricObjective {
  std::string metric;
  quality::Direction direction;
};

std::optional<MetricObjective> parse_metric(const std::string& name) {
  if (!name.starts_with(kMetricPrefix)) return std::nullopt;
  std::string rest = name.substr(kMetricPrefix.size());
  quality::Direction dir = quality::Direction::kMinimize;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    const auto parsed = quality::parse_direction(rest.substr(colon + 1));
    if (!parsed) return std::nullopt;
    dir = *parsed;
    rest = rest.substr(0, colon);
  }
  if (rest.empty()) return std::nullopt;
  return MetricObjective{rest, dir};
}

std::optional<double> objective_value(const RunRecord& r, const ObjectiveSelector& sel) {
  if (sel.name == "quality_loss") {
    const auto q = r.quality();
    return q ? std::optional<double>(q->normalized_loss()) : std::nullopt;
  }
  if (sel.name == "e_train" || sel.name == "e_train_kwh") return r.e_train_kwh;
  if (sel.name == "e_gen" || sel.name == "e_gen_wh") return r.e_gen_wh;
  if (sel.name == "param_count") {
    return r.param_count ? std::optional<double>(static_cast<double>(*r.param_count)) : std::nullopt;
  }
  if (const auto m = parse_metric(sel.name)) {
    const auto it = r.metrics.find(m->metric);
    if (it == r.metrics.end()) return std::nullopt;
    return quality::to_minimization(it->second, m->direction);
  }
  return std::nullopt;
}

}  // namespace

std::string available_objectives() {
  std::string out;
  for (const auto& k : kKnownObjectives) out += std::string(out.empty() ? "" : ", ") + k.name;
  return out + ", metric.<name>[:min|:max|:complement]";
}

std::vector<ObjectiveSelector> parse_objectives(const std::string& comma_list) {
  std::vector<ObjectiveSelector> out;
  std::string_view rest = comma_list;
  while (true) {
    const auto comma = rest.find(',');
    const std::string name(text::trim(rest.substr(0, comma)));
    bool matched = false;
    for (const auto& k : kKnownObjectives) {
      if (name == k.name || name == k.alias) {
        out.push_back({name, k.label, k.decimals});
        matched = true;
        break;
      }
    }
    if (!matched) {
      const auto m = parse_metric(name);
      if (!m) {
        throw Error(ErrorCode::kUnknownObjective,
                    "unknown objective '" + name + "' (available: " + available_objectives() + ")");
      }
      std::string label = m->metric;
      if (m->direction == quality::Direction::kMaximize) label = "-" + label;
      if (m->direction == quality::Direction::kComplement) label = "1-" + label;
      out.push_back({name, label, -1});
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  std::set<std::string> seen;
  for (const auto& o : out) {
    if (!seen.insert(o.label).second) {
      throw Error(ErrorCode::kInput, "objective '" + o.name + "' selected twice");
    }
  }
  return out;
}

ParetoResult cmd_pareto(const dataset::Dataset& data, const ParetoOptions& options) {
  if (options.objectives.empty()) throw Error(ErrorCode::kInput, "no objectives selected");
  ParetoResult result;
  result.source = data.source;
  for (const auto& o : options.objectives) {
    result.spec.objective_labels.push_back(o.label);
    result.spec.objective_decimals.push_back(o.decimals);
  }

  std::vector<std::string> incomplete;
  std::set<std::string> train_methods;
  for (const auto& r : data.records) {
    std::vector<double> values;
    std::vector<std::string> missing;
    for (const auto& o : options.objectives) {
      if (const auto v = objective_value(r, o)) {
        values.push_back(*v);
      } else {
        missing.push_back(o.name);
      }
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      incomplete.push_back("record '" + r.label + "' lacks " + list);
      continue;
    }
    for (const auto& o : options.objectives) {
      if (o.name == "e_train" || o.name == "e_train_kwh") {
        train_methods.insert(r.e_train_method ? std::string(method_name(*r.e_train_method))
                                              : std::string("unspecified"));
      }
    }
    result.points.emplace_back(r.label, std::move(values));
  }

  if (!incomplete.empty()) {
    if (!options.exclude_incomplete) {
      std::string message = "incomplete records (use --exclude-incomplete to skip them)";
      for (const auto& m : incomplete) message += "; " + m;
      throw Error(ErrorCode::kIncomplete, message);
    }
    for (const auto& m : incomplete) result.warnings.push_back("excluded " + m);
  }
  if (result.points.empty()) {
    throw Error(ErrorCode::kIncomplete, "no record carries every selected objective");
  }
  if (train_methods.size() > 1) {
    std::string list;
    for (const auto& m : train_methods) list += (list.empty() ? "" : ", ") + m;
    result.warnings.push_back("E_train values mix estimation methods: " + list);
  }

  result.front = pareto::pareto_front(result.points);
  return result;
}

ParetoArtifacts render_pareto(const ParetoResult& result) {
  ParetoArtifacts a;
  a.table = report::emit_front_table(result.points, result.front, result.spec);
  a.document = report::emit_front_document(result.points, result.front, result.spec, result.source);
  if (result.spec.objective_labels.size() == 2) {
    a.scatter = report::emit_scatter(result.front, result.points, result.spec);
  }
  return a;
}

std::string format_pareto_summary(const ParetoResult& result) {
  std::string out = "objectives:";
  for (std::size_t i = 0; i < result.spec.objective_labels.size(); ++i) {
    out += (i ? ", " : " ") + result.spec.objective_labels[i];
  }
  out += "\npoints: " + std::to_string(result.points.size()) + "\n";
  out += "optimal (" + std::to_string(result.front.optimal.size()) + "):";
  for (std::size_t i = 0; i < result.front.optimal.size(); ++i) {
    out += (i ? ", " : " ") + result.front.optimal[i];
  }
  out += "\ndominated (" + std::to_string(result.front.dominated.size()) + "):";
  for (std::size_t i = 0; i < result.front.dominated.size(); ++i) {
    const auto& d = result.front.dominated[i];
    out += (i ? "; " : " ") + d.label + " by [";
    for (std::size_t j = 0; j < d.dominators.size(); ++j) out += (j ? ", " : "") + d.dominators[j];
    out += "]";
  }
  return out + "\n";
}

namespace {

std::vector<std::string> write_outputs(const std::string& dir,
                                       const std::vector<std::pair<std::string, std::string>>& files,
                                       bool force) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::string> paths;
  for (const auto& [name, contents] : files) {
    const std::string path = (fs::path(dir) / name).string();
    if (!force && fs::exists(path)) {
      throw Error(ErrorCode::kExists, "'" + path + "' already exists (use --force to overwrite)");
    }
    paths.push_back(path);
  }
  for (std::size_t i = 0; i < files.size(); ++i) text::write_file(paths[i], files[i].second);
  return paths;
}

}  // namespace

std::vector<std::string> write_pareto_outputs(const std::string& dir, const ParetoArtifacts& artifacts,
                                              bool force) {
  std::vector<std::pair<std::string, std::string>> files{{"report.csv", artifacts.table},
                                                         {"front.json", artifacts.document}};
  if (artifacts.scatter) files.emplace_back("scatter.svg", *artifacts.scatter);
  return write_outputs(dir, files, force);
}

// ---- ingest ----

IngestResult cmd_ingest(const PowerTrace& trace, const std::vector<power::EpochMark>& marks,
                        std::optional<std::int64_t> total_epochs, double gap_threshold_s) {
  IngestResult r{power::integrate_trace(trace), power::find_gaps(trace, gap_threshold_s), {}, 0,
                 std::nullopt};
  if (!marks.empty()) {
    r.epoch_wh = power::segment_energies_wh(trace, marks);
    r.completed_epochs = marks.back().epoch_index - marks.front().epoch_index;
  }
  if (total_epochs) {
    if (marks.empty()) {
      throw Error(ErrorCode::kInsufficientData, "--total-epochs needs an epoch-mark file (--marks)");
    }
    r.extrapolated = power::extrapolate_training(trace, marks, *total_epochs);
  }
  return r;
}

std::string format_ingest_report(const IngestResult& r) {
  std::string out;
  out += "integrated_wh: " + text::format_double(r.integrated.wh()) + "\n";
  out += "integrated_kwh: " + text::format_double(r.integrated.kwh()) + "\n";
  out += "integrated_method: " + std::string(method_name(r.integrated.method())) + "\n";
  out += "gaps: " + std::to_string(r.gaps.size()) + "\n";
  if (!r.epoch_wh.empty()) {
    out += "completed_epochs: " + std::to_string(r.completed_epochs) + "\n";
    double total = 0.0;
    for (double e : r.epoch_wh) total += e;
    out += "marked_span_kwh: " + text::format_double(total / 1000.0) + "\n";
    out += "mean_epoch_kwh: " +
           text::format_double(total / 1000.0 / static_cast<double>(r.completed_epochs)) + "\n";
  }
  if (r.extrapolated) {
    out += "extrapolated_kwh: " + text::format_double(r.extrapolated->kwh()) + "\n";
    out += "extrapolated_method: " + std::string(method_name(r.extrapolated->method())) + "\n";
  }
  return out;
}

// ---- flops ----

flops::StackTotals cmd_flops(const flops::LayerStack& stack,
                             const std::optional<flops::TensorShape>& input_shape) {
  flops::TensorShape shape;
  if (input_shape) {
    shape = *input_shape;
  } else if (!stack.input_shape.empty()) {
    shape.dims = stack.input_shape;
  } else if (!stack.layers.empty()) {
    throw Error(ErrorCode::kShape, "no input shape: pass --input-shape or set input_shape in the stack file");
  }
  return flops::stack_totals(stack.layers, shape);
}

std::string format_flops_report(const flops::LayerStack& stack, const flops::StackTotals& totals,
                                int mac_factor) {
  using csv::Cell;
  std::string out = csv::format_row({Cell::text("layer"), Cell::text("kind"), Cell::text("output_shape"),
                                     Cell::text("params"), Cell::text("fpo")});
  for (std::size_t i = 0; i < totals.layers.size(); ++i) {
    const auto& l = totals.layers[i];
    out += csv::format_row({Cell::number(std::to_string(i)),
                            Cell::text(std::string(flops::kind_name(stack.layers[i]))),
                            Cell::text(flops::to_string(l.out_shape)),
                            Cell::number(std::to_string(l.params)),
                            Cell::number(std::to_string(l.ops.fpo(mac_factor)))});
  }
  out += "# total_params: " + std::to_string(totals.params) + "\n";
  out += "# total_fpo: " + std::to_string(totals.fpo(mac_factor)) + "\n";
  out += "# mac_factor: " + std::to_string(mac_factor) +
         (mac_factor == 2 ? " (multiplies + adds; forward pass only; activations excluded)\n"
                          : " (multiply-accumulates; forward pass only; activations excluded)\n");
  return out;
}

// ---- entry point ----

namespace {

struct GlobalOptions {
  std::string catalog;
  std::string out_dir;
  bool force = false;
  int mac_factor = 2;
  std::string objectives = "quality_loss,e_train";
  bool exclude_incomplete = false;
  std::string kernel_isa = "auto";
};

hardware::Catalog load_catalog(const GlobalOptions& g) {
  return g.catalog.empty() ? hardware::builtin_catalog() : hardware::load_catalog_file(g.catalog);
}

std::vector<MeasuredOverride> parse_measured(const std::vector<std::string>& items) {
  std::vector<MeasuredOverride> out;
  for (const auto& item : items) {
    const auto eq = item.rfind('=');
    const auto kwh = eq == std::string::npos ? std::nullopt : text::parse_double(item.substr(eq + 1));
    if (!kwh || eq == 0) {
      throw Error(ErrorCode::kInput, "--measured expects LABEL=KWH, got '" + item + "'");
    }
    out.push_back({item.substr(0, eq), *kwh});
  }
  return out;
}

flops::TensorShape parse_shape(const std::string& text_shape) {
  flops::TensorShape shape;
  std::string_view rest = text_shape;
  while (true) {
    const auto comma = rest.find_first_of(",x");
    const auto v = text::parse_int(rest.substr(0, comma));
    if (!v) throw Error(ErrorCode::kShape, "--input-shape expects integers like 4 or 3,32,32");
    shape.dims.push_back(*v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return shape;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"greeneval: evaluate models jointly on quality and energy consumption"};
  app.name("greeneval");
  GlobalOptions g;
  app.add_option("--catalog", g.catalog, "Hardware catalog file (default: built-in seed catalog)");
  app.add_option("--out", g.out_dir, "Output directory for report files");
  app.add_flag("--force", g.force, "Overwrite existing output files");
  app.add_option("--mac-factor", g.mac_factor, "FPO per multiply-accumulate (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--objectives", g.objectives, "Comma-separated objectives for pareto");
  app.add_flag("--exclude-incomplete", g.exclude_incomplete,
               "Skip records lacking a selected objective instead of failing");
  app.add_option("--kernel-isa", g.kernel_isa, "Kernel variant: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.require_subcommand(1);

  std::string records_path;
  std::vector<std::string> measured_items;
  std::optional<double> carbon_intensity;
  std::string region = "unspecified";
  auto* estimate = app.add_subcommand("estimate", "Fill in worst-case training energy");
  estimate->add_option("records", records_path, "Records CSV")->required();
  estimate->add_option("--measured", measured_items, "Compare LABEL=KWH against the worst case");
  estimate->add_option("--carbon-intensity", carbon_intensity, "g CO2e per kWh for a carbon column");
  estimate->add_option("--region", region, "Region name for the carbon intensity");

  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto front over selected objectives");
  pareto_cmd->add_option("records", records_path, "Records CSV")->required();

  std::string trace_path;
  std::string marks_path;
  std::optional<std::int64_t> total_epochs;
  double gap_threshold = power::kDefaultGapThresholdS;
  auto* ingest = app.add_subcommand("ingest", "Integrate a power trace and extrapolate training energy");
  ingest->add_option("trace", trace_path, "Power trace CSV (t_seconds,watts)")->required();
  ingest->add_option("--marks", marks_path, "Epoch marks CSV (epoch_index,t_seconds)");
  ingest->add_option("--total-epochs", total_epochs, "Epochs of the full training run");
  ingest->add_option("--gap-threshold", gap_threshold, "Warn about sampling gaps longer than this (s)");

  std::string stack_path;
  std::string input_shape;
  auto* flops_cmd = app.add_subcommand("flops", "Parameter and FPO counts for a layer stack");
  flops_cmd->add_option("stack", stack_path, "Layer stack JSON")->required();
  flops_cmd->add_option("--input-shape", input_shape, "Input shape without batch, e.g. 3,32,32");

  std::string preset = "full";
  auto* report_cmd = app.add_subcommand("report", "Render a records table");
  report_cmd->add_option("records", records_path, "Records CSV")->required();
  report_cmd->add_option("--preset", preset, "table1, table2 or full")
      ->check(CLI::IsMember({"table1", "table2", "full"}));

  for (auto* sub : {estimate, pareto_cmd, ingest, flops_cmd, report_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: E_USAGE: " << e.what() << "\n";
    return 2;
  }

  try {
    if (g.kernel_isa == "scalar") kernels::set_active_isa(kernels::Isa::kScalar);
    if (g.kernel_isa == "avx2") kernels::set_active_isa(kernels::Isa::kAvx2);

    if (estimate->parsed()) {
      const auto catalog = load_catalog(g);
      const auto data = dataset::load_dataset(records_path, catalog);
      std::optional<CarbonIntensity> intensity;
      if (carbon_intensity) intensity.emplace(region, *carbon_intensity);
      const auto result = cmd_estimate(catalog, data, parse_measured(measured_items), intensity);
      const std::string table = format_estimate_report(result);
      if (!g.out_dir.empty()) {
        for (const auto& p : write_outputs(g.out_dir,
                                           {{"report.csv", table},
                                            {"dataset.csv", dataset::serialize_dataset(result.dataset)}},
                                           g.force)) {
          err << "wrote " << p << "\n";
        }
      }
      out << table;
    } else if (pareto_cmd->parsed()) {
      const auto data = dataset::load_dataset(records_path, load_catalog(g));
      const auto result =
          cmd_pareto(data, ParetoOptions{parse_objectives(g.objectives), g.exclude_incomplete});
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      const auto artifacts = render_pareto(result);
      if (!g.out_dir.empty()) {
        for (const auto& p : write_pareto_outputs(g.out_dir, artifacts, g.force)) {
          err << "wrote " << p << "\n";
        }
      }
      out << format_pareto_summary(result);
    } else if (ingest->parsed()) {
      const auto trace = power::parse_trace(text::read_file(trace_path));
      std::vector<power::EpochMark> marks;
      if (!marks_path.empty()) marks = power::parse_marks(text::read_file(marks_path));
      const auto result = cmd_ingest(trace, marks, total_epochs, gap_threshold);
      constexpr std::size_t kMaxGapWarnings = 10;
      for (std::size_t i = 0; i < result.gaps.size() && i < kMaxGapWarnings; ++i) {
        const auto& gap = result.gaps[i];
        err << "warning: sampling gap of " << text::format_double(gap.duration_s) << " s after t="
            << text::format_double(gap.t_seconds) << " s (integrated as-is)\n";
      }
      if (result.gaps.size() > kMaxGapWarnings) {
        err << "warning: " << result.gaps.size() - kMaxGapWarnings << " more sampling gaps not shown\n";
      }
      out << format_ingest_report(result);
    } else if (flops_cmd->parsed()) {
      const auto stack = flops::parse_layer_stack(text::read_file(stack_path));
      std::optional<flops::TensorShape> shape;
      if (!input_shape.empty()) shape = parse_shape(input_shape);
      const auto totals = cmd_flops(stack, shape);
      out << format_flops_report(stack, totals, g.mac_factor);
    } else if (report_cmd->parsed()) {
      const auto data = dataset::load_dataset(records_path, load_catalog(g));
      const auto spec = preset == "table1"   ? report::table1_spec()
                        : preset == "table2" ? report::table2_spec()
                                             : report::full_spec();
      const std::string table = report::emit_table(data.records, spec);
      if (!g.out_dir.empty()) {
        for (const auto& p : write_outputs(g.out_dir, {{"report.csv", table}}, g.force)) {
          err << "wrote " << p << "\n";
        }
      }
      out << table;
    }
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace greeneval::cli
