#pragma once

// Command implementations behind the `greeneval` executable. Each command is a
// plain function over parsed inputs so it can be tested without a process;
// run_cli() does argument parsing, file I/O and error reporting.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "greeneval/core.hpp"
#include "greeneval/dataset.hpp"
#include "greeneval/energy.hpp"
#include "greeneval/flop_counter.hpp"
#include "greeneval/hardware_catalog.hpp"
#include "greeneval/pareto.hpp"
#include "greeneval/power_ingest.hpp"
#include "greeneval/quality.hpp"
#include "greeneval/report.hpp"

namespace greeneval::cli {

// ---- estimate ----

enum class EstimateStatus { kEstimated, kMeasuredKept };

struct EstimateRow {
  std::string label;
  EstimateStatus status;
  std::optional<EnergyEstimate> worst_case;  // when hardware and hours are known
  std::optional<energy::Comparison> comparison;  // measured vs worst case
  std::optional<double> carbon_g;
};

struct EstimateResult {
  dataset::Dataset dataset;  // e_train_kwh filled in
  std::vector<EstimateRow> rows;
};

struct MeasuredOverride {
  std::string label;
  double kwh;
};

// Fills e_train_kwh with the worst-case estimate for records without a
// measured energy. Records carrying a measured energy are left untouched; if
// their hardware and hours are known the worst case is still reported next to
// the measurement. `measured` supplies measurements for comparison only.
// Throws kUnresolvedHardware naming the nearest catalog entries, kInput for
// records with neither hours nor energy.
EstimateResult cmd_estimate(const hardware::Catalog& catalog, const dataset::Dataset& data,
                            const std::vector<MeasuredOverride>& measured = {},
                            const std::optional<CarbonIntensity>& intensity = std::nullopt);

std::string format_estimate_report(const EstimateResult& result);

// ---- pareto ----

struct ObjectiveSelector {
  std::string name;   // as given on the command line
  std::string label;  // axis label with unit
  int decimals = -1;
};

// Known names: quality_loss, e_train (e_train_kwh), e_gen (e_gen_wh),
// param_count, and metric.<name>[:min|:max|:complement].
// Throws kUnknownObjective listing the available names.
std::vector<ObjectiveSelector> parse_objectives(const std::string& comma_list);
std::string available_objectives();

struct ParetoOptions {
  std::vector<ObjectiveSelector> objectives;
  bool exclude_incomplete = false;
};

struct ParetoResult {
  std::vector<EvalPoint> points;
  pareto::FrontResult front;
  report::ReportSpec spec;
  std::vector<std::string> warnings;
  std::string source;
};

// Throws kIncomplete when a record lacks a selected objective (unless
// exclude_incomplete) or when no complete record remains.
ParetoResult cmd_pareto(const dataset::Dataset& data, const ParetoOptions& options);

struct ParetoArtifacts {
  std::string table;     // report.csv
  std::string document;  // front.json
  std::optional<std::string> scatter;  // scatter.svg, two objectives only
};

ParetoArtifacts render_pareto(const ParetoResult& result);
std::string format_pareto_summary(const ParetoResult& result);

// Writes the artifacts into dir (created if needed). Existing files are only
// replaced with force; otherwise throws kExists.
std::vector<std::string> write_pareto_outputs(const std::string& dir, const ParetoArtifacts& artifacts,
                                              bool force);

// ---- ingest ----

struct IngestResult {
  EnergyEstimate integrated;  // Wh over the whole trace
  std::vector<power::Gap> gaps;
  std::vector<double> epoch_wh;  // per mark segment, when marks are given
  std::int64_t completed_epochs = 0;
  std::optional<EnergyEstimate> extrapolated;  // kWh, with marks and total epochs
};

IngestResult cmd_ingest(const PowerTrace& trace, const std::vector<power::EpochMark>& marks,
                        std::optional<std::int64_t> total_epochs,
                        double gap_threshold_s = power::kDefaultGapThresholdS);

std::string format_ingest_report(const IngestResult& result);

// ---- flops ----

flops::StackTotals cmd_flops(const flops::LayerStack& stack,
                             const std::optional<flops::TensorShape>& input_shape);

std::string format_flops_report(const flops::LayerStack& stack, const flops::StackTotals& totals,
                                int mac_factor);

// ---- entry point ----

// argv[0] is the program name. Returns the process exit code: 0 on success,
// 1 on a greeneval::Error, 2 on a usage error. Errors are printed to err as a
// single line "error: <CODE>: <message>".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greeneval::cli
