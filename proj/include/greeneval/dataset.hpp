#pragma once

// Records file: a CSV table with a header row. Recognized columns:
//
//   label            required, unique
//   hardware         required, accelerator name (resolved through the catalog)
//   gpu_count        default 1
//   max_power_watts  overrides the catalog figure
//   train_hours
//   mos | quality_loss
//   e_train_kwh, e_train_method (worst_case_spec | measured_integrated |
//                                measured_extrapolated)
//   e_gen_wh, gen_workload
//   param_count
//   config_meta.<key>  opaque configuration tags
//   metric.<name>      extra numeric quality/cost metrics
//
// Empty cells are absent values. Any other column is rejected. An optional
// leading comment `# format_version: 1` declares the format version.

#include <string>
#include <string_view>
#include <vector>

#include "greeneval/core.hpp"
#include "greeneval/hardware_catalog.hpp"

namespace greeneval::dataset {

inline constexpr int kFormatVersion = 1;

struct Dataset {
  std::vector<RunRecord> records;
  std::string source;  // path the records came from, "" if in-memory
  int format_version = kFormatVersion;
};

// Parses and validates (validate_records); violations throw kInput listing
// every problem. Records without max_power_watts get the catalog's figure
// when the hardware name resolves.
Dataset parse_dataset(std::string_view document, const hardware::Catalog& catalog,
                      std::string source = {});
Dataset load_dataset(const std::string& path, const hardware::Catalog& catalog);

std::string serialize_dataset(const Dataset& dataset);

}  // namespace greeneval::dataset
