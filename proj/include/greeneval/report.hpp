#pragma once

// Evaluation artifacts: CSV tables, a JSON export of a Pareto classification
// and an SVG scatter of a two-objective space. Output is byte-deterministic.
// Numbers are rounded half-to-even only here, never before classification.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greeneval/core.hpp"
#include "greeneval/pareto.hpp"

namespace greeneval::report {

enum class Field {
  kLabel,
  kHardware,         // "4 x P100"
  kGpuCount,
  kPowerW,           // per-device max power
  kTrainHours,
  kParamCount,
  kMos,
  kQualityLoss,
  kETrainKwh,
  kETrainMethod,
  kEGenWh,
  kGenWorkload,
};

struct ColumnSpec {
  Field field;
  std::string header;
  int decimals = -1;     // < 0: shortest round-trip representation
  double divisor = 1.0;  // value shown is value / divisor
};

enum class Format { kDelimitedTable, kStructuredDocument, kVectorImage };

struct ReportSpec {
  std::vector<std::string> objective_labels;  // axis names with units
  std::vector<int> objective_decimals;        // per objective; empty = shortest repr
  std::vector<ColumnSpec> columns;            // record tables
  std::vector<Format> formats{Format::kDelimitedTable, Format::kStructuredDocument,
                              Format::kVectorImage};

  bool wants(Format f) const;
};

// Model, Hardware, Power (W), Hours, Energy (kWh) with energy at 1 decimal.
ReportSpec table1_spec();
// Model, # param (M), 1-%MOS, E_train (kWh), E_gen (Wh).
ReportSpec table2_spec();
// Every record field.
ReportSpec full_spec();

// One row per record. Throws kDomain if a decimals value is invalid.
std::string emit_table(std::span<const RunRecord> records, const ReportSpec& spec);

// label, one column per objective, status, dominators. Throws kDimension when
// objective_labels does not match the point dimension.
std::string emit_front_table(std::span<const EvalPoint> points, const pareto::FrontResult& front,
                             const ReportSpec& spec);

// JSON: objectives, points with status and dominators, optimal and dominated lists.
std::string emit_front_document(std::span<const EvalPoint> points, const pareto::FrontResult& front,
                                const ReportSpec& spec, const std::string& source = {});

// SVG scatter; optimal markers carry class "pareto-optimal", dominated ones
// "pareto-dominated". Two-objective input only (kDimension otherwise).
std::string emit_scatter(const pareto::FrontResult& front, std::span<const EvalPoint> points,
                         const ReportSpec& spec);

}  // namespace greeneval::report
