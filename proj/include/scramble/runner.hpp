#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scramble/experiment.hpp"
#include "scramble/series.hpp"

namespace scramble {

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;  // overrides the spec seed
};

// One line of fit_report.json.
struct ReportEntry {
  std::string quantity;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::array<double, 2> window{0.0, 0.0};
  double r2 = 0.0;
  std::map<std::string, double> inputs;
  std::optional<double> expected;
};

struct RunResult {
  std::vector<ReportEntry> report;
  std::vector<std::filesystem::path> files;
  // Recorded series per quantity ("size", "ee", "master", "mc"), one per L.
  std::map<std::string, std::vector<Series>> series;
};

// Runs every L of the spec, writes the per-L CSVs and fit_report.json into
// options.out_dir, and returns what was written.
RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options);

// The analysis block on already computed series.
std::vector<ReportEntry> analyze(const ExperimentSpec& spec, const std::map<std::string, std::vector<Series>>& series);

}  // namespace scramble
