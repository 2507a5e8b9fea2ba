#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scramble/errors.hpp"

namespace scramble {

// A spec file that failed to parse or validate. line is 0 when the problem is
// a missing field.
class SpecError : public InvalidArgument {
 public:
  SpecError(std::string source, std::size_t line, std::string field, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

enum class Engine { sep_local, sep_nonlocal, master_exact, master_size, clifford_1d, clifford_nonlocal, clifford_floquet };
std::string_view to_string(Engine e);

// c * L^k, written "3", "L", "0.5*L" or "2*L^2" in spec files.
struct Scaled {
  double coeff = 0.0;
  int power = 0;
  double at(std::size_t L) const;
  std::size_t count_at(std::size_t L) const;
};

enum class FitKind { none, exponential, power_law, saturation, oscillation };

struct AnalysisSpec {
  // Which series the collapse and the fit read: "size" or "ee".
  std::string collapse_quantity;
  double collapse_z = 0.0, collapse_alpha = 0.0;
  std::optional<double> contrast_z, contrast_alpha;
  double collapse_window_lo = 0.0, collapse_window_hi = 1.0;

  FitKind fit = FitKind::none;
  std::string fit_quantity = "size";
  bool fit_per_site = false;
  std::optional<Scaled> fit_lo, fit_hi;
  double tail_fraction = 0.2;
  // Expected value of the scaled estimate, echoed into the report.
  std::optional<double> expected;
};

struct ExperimentSpec {
  std::string source;  // file name, for diagnostics
  std::string name;
  Engine engine = Engine::sep_local;
  std::string figure;

  std::vector<std::size_t> L;
  std::uint64_t seed = 0;
  std::uint64_t trajectories = 1;
  double A = 0.25, B = 0.25, p = 0.5, dt = 1.0;
  Scaled periods;
  std::size_t record_points = 0;  // 0 records every period
  std::size_t log_points = 0;

  // Clifford engines.
  bool interaction = true;
  bool record_size = true;
  bool record_ee = false;
  std::size_t subsystem_lo = 0, subsystem_hi = 0;
  bool single_majorana = false;
  bool exact_gates = false;

  // Master-equation engines.
  Scaled t_max, t_step;
  bool compare_mc = false;
  double mc_dt = 0.01;

  AnalysisSpec analysis;
};

ExperimentSpec parse_spec(std::string_view text, const std::string& source);
ExperimentSpec load_spec(const std::filesystem::path& path);

// Bundled specs in a directory, sorted by name.
std::vector<ExperimentSpec> load_manifest(const std::filesystem::path& dir);
std::filesystem::path default_experiments_dir();

}  // namespace scramble
