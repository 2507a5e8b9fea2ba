#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>

#include "scramble/errors.hpp"
#include "scramble/experiment.hpp"
#include "scramble/runner.hpp"

namespace {

using namespace scramble;

int list_command(const std::filesystem::path& dir) {
  auto specs = load_manifest(dir);
  std::size_t w = 4, we = 6;
  for (const auto& s : specs) {
    w = std::max(w, s.name.size());
    we = std::max(we, to_string(s.engine).size());
  }
  fmt::print("{:<{}}  {:<{}}  {}\n", "name", w, "engine", we, "figure");
  for (const auto& s : specs) fmt::print("{:<{}}  {:<{}}  {}\n", s.name, w, to_string(s.engine), we, s.figure);
  return 0;
}

int validate_command(const std::vector<std::string>& files) {
  for (const auto& f : files) {
    auto s = load_spec(f);
    fmt::print("{}: ok ({}, {})\n", f, s.name, to_string(s.engine));
  }
  return 0;
}

int run_command(const std::string& file, const std::string& out, unsigned threads, const std::optional<std::uint64_t>& seed) {
  ExperimentSpec spec = load_spec(file);
  RunOptions o;
  o.out_dir = out.empty() ? std::filesystem::path("out") / spec.name : std::filesystem::path(out);
  o.threads = threads;
  o.seed = seed;
  RunResult r = run_experiment(spec, o);
  for (const auto& e : r.report) {
    std::string L = e.inputs.count("L") ? fmt::format(" L={}", e.inputs.at("L")) : "";
    std::string expected = e.expected ? fmt::format(" (expected {})", *e.expected) : "";
    fmt::print("{}{}: {} ± {}{}\n", e.quantity, L, e.estimate, e.stderr_, expected);
  }
  for (const auto& f : r.files) fmt::print("wrote {}\n", f.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator spreading and entanglement in Majorana circuits"};
  app.require_subcommand(1);

  std::string experiments = scramble::default_experiments_dir().string();
  auto* list = app.add_subcommand("list", "List the bundled experiments");
  list->add_option("--dir", experiments, "Directory holding the experiment specs");

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Parse and validate spec files");
  validate->add_option("spec", validate_files, "Spec files")->required();

  std::string spec, out;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run an experiment spec");
  run->add_option("spec", spec, "Spec file, or the name of a bundled experiment")->required();
  run->add_option("--out", out, "Output directory (default out/<name>)");
  run->add_option("--threads", threads, "Worker threads, 0 for all cores");
  run->add_option("--seed", seed, "Override the spec seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) return list_command(experiments);
    if (*validate) return validate_command(validate_files);
    if (!std::filesystem::exists(spec)) {
      auto bundled = scramble::default_experiments_dir() / (spec + ".toml");
      if (std::filesystem::exists(bundled)) spec = bundled.string();
    }
    return run_command(spec, out, threads, seed);
  } catch (const scramble::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const scramble::GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
