#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "aoicov/config.hpp"
#include "aoicov/csv.hpp"

namespace aoicov {

struct ExperimentResult {
  std::string name;  // file stem, e.g. "energy_sweep"
  CsvTable table;
  bool checks_passed = true;  // only meaningful for Validate
};

/// Evaluates the experiment in memory. Sweep points run concurrently on
/// spec.sim.threads workers; rows come out in sweep order and simulated
/// columns use per-row seeds derived from spec.sim.seed.
ExperimentResult build_experiment(const ExperimentSpec& spec);

/// build_experiment + write `<output_dir>/<name>.csv`. Returns the CSV path.
std::filesystem::path run_experiment(const ExperimentSpec& spec,
                                     const std::filesystem::path& output_dir,
                                     ExperimentResult* result = nullptr);

/// Prints min/max/argmin summaries of experiment CSVs. The experiment kind is
/// recognised from the header; throws ValidationError on missing columns.
void report_summary(std::span<const CsvTable> tables, std::ostream& out);

}  // namespace aoicov
