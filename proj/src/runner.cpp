#include "scramble/runner.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "scramble/analysis.hpp"
#include "scramble/circuit.hpp"
#include "scramble/master_eq.hpp"
#include "scramble/sep.hpp"

namespace scramble {

namespace {

namespace fs = std::filesystem;

std::size_t record_every(const ExperimentSpec& s, std::size_t periods) {
  if (s.record_points == 0) return 1;
  return std::max<std::size_t>(1, periods / s.record_points);
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

std::string sep_csv(const Series& s, std::string_view variant) {
  std::string out = "t,mean_size,stderr,L,trajectories,seed,variant\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    out += fmt::format("{},{},{},{},{},{},{}\n", s.t[k], s.mean[k], s.err[k], s.L, s.trajectories, s.seed, variant);
  return out;
}

std::string master_csv(const Series& s, std::string_view method, double A, double B) {
  std::string out = "t,mean_size,method,L,A,B\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    out += fmt::format("{},{},{},{},{},{}\n", s.t[k], s.mean[k], method, s.L, A, B);
  return out;
}

std::string size_csv(const Series& s, std::string_view variant, double p) {
  std::string out = "t,mean_size,stderr,L,variant,p,seed\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    out += fmt::format("{},{},{},{},{},{},{}\n", s.t[k], s.mean[k], s.err[k], s.L, variant, p, s.seed);
  return out;
}

std::string ee_csv(const Series& s, std::string_view variant, std::size_t lo, std::size_t hi) {
  std::string out = "t,mean_ee,stderr,L,variant,subsys_lo,subsys_hi,seed\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    out += fmt::format("{},{},{},{},{},{},{},{}\n", s.t[k], s.mean[k], s.err[k], s.L, variant, lo, hi, s.seed);
  return out;
}

std::vector<double> time_grid(const ExperimentSpec& s, std::size_t L) {
  const double tmax = s.t_max.at(L), step = s.t_step.at(L);
  std::vector<double> grid{0.0};
  auto n = static_cast<std::size_t>(std::floor(tmax / step + 1e-9));
  for (std::size_t k = 1; k <= n; ++k) grid.push_back(static_cast<double>(k) * step);
  return grid;
}

// Largest |a - b| / err over points with a positive error bar.
ReportEntry compare_with_mc(const Series& exact, const Series& mc) {
  ReportEntry e;
  e.quantity = "max_abs_z[exact_vs_mc]";
  double worst = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    if (!(mc.err[k] > 0)) continue;
    worst = std::max(worst, std::abs(exact.mean[k] - mc.mean[k]) / mc.err[k]);
    ++n;
  }
  e.estimate = worst;
  e.stderr_ = 0.0;
  e.window = {mc.t.front(), mc.t.back()};
  e.r2 = 0.0;
  e.inputs = {{"L", double(mc.L)}, {"points", double(n)}, {"trajectories", double(mc.trajectories)}};
  e.expected = 3.0;
  return e;
}

void run_sep(const ExperimentSpec& s, const RunOptions& o, std::uint64_t seed, RunResult& r) {
  for (std::size_t L : s.L) {
    SepConfig c;
    c.L = L;
    c.A = s.A;
    c.B = s.B;
    c.dt = s.dt;
    c.periods = s.periods.count_at(L);
    c.trajectories = s.trajectories;
    c.seed = seed;
    c.variant = s.engine == Engine::sep_local ? SepVariant::local : SepVariant::nonlocal;
    c.record_every = record_every(s, c.periods);
    Series series = run_ensemble(c, o.threads);
    auto path = o.out_dir / fmt::format("size_L{}.csv", L);
    write_file(path, sep_csv(series, to_string(c.variant)));
    r.files.push_back(path);
    r.series["size"].push_back(std::move(series));
  }
}

void run_master(const ExperimentSpec& s, const RunOptions& o, std::uint64_t seed, RunResult& r) {
  const bool exact = s.engine == Engine::master_exact;
  for (std::size_t L : s.L) {
    std::vector<double> grid = time_grid(s, L);
    Series mc;
    if (s.compare_mc) {
      SepConfig c;
      c.L = L;
      c.A = exact ? s.A : 0.0;
      c.B = s.B;
      c.dt = s.mc_dt;
      c.variant = exact ? SepVariant::local : SepVariant::nonlocal;
      c.trajectories = s.trajectories;
      c.seed = seed;
      double ratio = s.t_step.at(L) / s.mc_dt;
      if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1)
        throw SpecError(s.source, 0, "params.mc_dt", "t_step must be a whole number of MC steps");
      c.record_every = static_cast<std::size_t>(std::llround(ratio));
      c.periods = c.record_every * (grid.size() - 1);
      mc = run_ensemble(c, o.threads);
      grid = mc.t;
      auto path = o.out_dir / fmt::format("mc_L{}.csv", L);
      write_file(path, sep_csv(mc, to_string(c.variant)));
      r.files.push_back(path);
    }
    Series ex;
    if (exact) {
      auto g = build_local_generator(L, s.A, s.B);
      ex = exact_mean_series(g, single_particle_distribution(g), grid);
    } else {
      auto g = build_size_generator(L, s.B);
      ex = exact_mean_series(g, unit_size_distribution(g), grid);
    }
    ex.L = L;
    auto path = o.out_dir / fmt::format("{}_L{}.csv", exact ? "master" : "size_ode", L);
    write_file(path, master_csv(ex, exact ? "master" : "size-ode", exact ? s.A : 0.0, s.B));
    r.files.push_back(path);
    if (s.compare_mc) {
      r.report.push_back(compare_with_mc(ex, mc));
      r.series["mc"].push_back(std::move(mc));
    }
    r.series["size"].push_back(std::move(ex));
  }
}

void run_clifford(const ExperimentSpec& s, const RunOptions& o, std::uint64_t seed, RunResult& r) {
  for (std::size_t L : s.L) {
    CircuitConfig c;
    c.L = L;
    c.variant = s.engine == Engine::clifford_1d         ? CircuitVariant::local_random
                : s.engine == Engine::clifford_nonlocal ? CircuitVariant::nonlocal
                                                        : CircuitVariant::floquet;
    c.p = s.p;
    c.interaction = s.interaction;
    c.periods = s.periods.count_at(L);
    c.trajectories = s.trajectories;
    c.seed = seed;
    c.subsystem_lo = s.subsystem_lo;
    c.subsystem_hi = s.subsystem_hi;
    c.log_points = s.log_points;
    c.record_every = s.log_points > 0 && s.record_points == 0 ? 0 : record_every(s, c.periods);
    c.single_majorana_start = s.single_majorana;
    c.size_gate_action = s.exact_gates ? GateAction::exact : GateAction::restricted;
    if (s.record_size) {
      Series series = heisenberg_size_series(c, o.threads);
      auto path = o.out_dir / fmt::format("size_L{}.csv", L);
      write_file(path, size_csv(series, to_string(c.variant), c.braid_probability()));
      r.files.push_back(path);
      r.series["size"].push_back(std::move(series));
    }
    if (s.record_ee) {
      Series series = ee_series(c, o.threads);
      auto path = o.out_dir / fmt::format("ee_L{}.csv", L);
      write_file(path, ee_csv(series, to_string(c.variant), c.lo(), c.hi()));
      r.files.push_back(path);
      r.series["ee"].push_back(std::move(series));
    }
  }
}

ReportEntry from_fit(std::string quantity, const FitResult& f, std::size_t L) {
  ReportEntry e;
  e.quantity = std::move(quantity);
  e.estimate = f.estimate;
  e.stderr_ = f.stderr_;
  e.window = {f.window_lo, f.window_hi};
  e.r2 = f.r2;
  e.inputs = {{"L", double(L)}, {"points", double(f.points)}};
  return e;
}

// Periods between successive times at which the series reaches its largest
// possible value. Consecutive hits count as one visit.
std::vector<double> maximum_visits(const Series& s, double top) {
  std::vector<double> visits;
  bool inside = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    bool hit = s.mean[k] >= top - 1e-9;
    if (hit && !inside) visits.push_back(s.t[k]);
    inside = hit;
  }
  return visits;
}

}  // namespace

std::vector<ReportEntry> analyze(const ExperimentSpec& spec, const std::map<std::string, std::vector<Series>>& series) {
  std::vector<ReportEntry> out;
  const AnalysisSpec& a = spec.analysis;
  auto get = [&](const std::string& q) -> const std::vector<Series>& {
    auto it = series.find(q);
    if (it == series.end()) throw InvalidArgument("analysis needs the " + q + " series, which was not recorded");
    return it->second;
  };

  if (!a.collapse_quantity.empty()) {
    const auto& set = get(a.collapse_quantity);
    auto collapse = [&](double z, double alpha) {
      CollapseSpec cs;
      cs.z = z;
      cs.alpha = alpha;
      cs.window_lo = a.collapse_window_lo;
      cs.window_hi = a.collapse_window_hi;
      ReportEntry e;
      e.quantity = "collapse_error[" + a.collapse_quantity + "]";
      e.estimate = collapse_error(set, cs);
      e.inputs = {{"z", z}, {"alpha", alpha}, {"sizes", double(set.size())}};
      return e;
    };
    ReportEntry main = collapse(a.collapse_z, a.collapse_alpha);
    main.expected = 0.05;
    out.push_back(main);
    if (a.contrast_z) {
      ReportEntry contrast = collapse(*a.contrast_z, *a.contrast_alpha);
      out.push_back(contrast);
      ReportEntry ratio;
      ratio.quantity = "collapse_contrast_ratio[" + a.collapse_quantity + "]";
      ratio.estimate = main.estimate > 0 ? contrast.estimate / main.estimate : std::numeric_limits<double>::infinity();
      ratio.inputs = {{"z", a.collapse_z}, {"contrast_z", *a.contrast_z}};
      ratio.expected = 3.0;
      out.push_back(ratio);
    }
  }

  if (a.fit == FitKind::none) return out;
  const auto& set = get(a.fit_quantity);
  const std::string q = a.fit_quantity + (a.fit_per_site ? "/L" : "");
  std::vector<double> Ls, periods;
  for (const Series& raw : set) {
    Series s = a.fit_per_site ? per_site(raw) : raw;
    const std::size_t L = s.L;
    switch (a.fit) {
      case FitKind::exponential: {
        FitWindow w = exponential_window(L);
        if (a.fit_lo) w.lo = a.fit_lo->at(L);
        if (a.fit_hi) w.hi = a.fit_hi->at(L);
        FitResult f = fit_exponential_rate(s, w);
        ReportEntry e = from_fit("rate_times_L[" + q + "]", f, L);
        e.estimate *= double(L);
        e.stderr_ *= double(L);
        e.expected = a.expected;
        out.push_back(e);
        break;
      }
      case FitKind::power_law: {
        FitWindow w = power_law_window(L);
        if (a.fit_lo) w.lo = a.fit_lo->at(L);
        if (a.fit_hi) w.hi = a.fit_hi->at(L);
        ReportEntry e = from_fit("power_law_exponent[" + q + "]", fit_power_law(s, w), L);
        e.expected = a.expected;
        out.push_back(e);
        break;
      }
      case FitKind::saturation: {
        ReportEntry e = from_fit("saturation[" + q + "]", saturation_value(s, a.tail_fraction), L);
        e.inputs["tail_fraction"] = a.tail_fraction;
        e.expected = a.expected;
        out.push_back(e);
        break;
      }
      case FitKind::oscillation: {
        std::size_t lo = spec.subsystem_lo ? spec.subsystem_lo : L / 4 + 2;
        std::size_t hi = spec.subsystem_hi ? spec.subsystem_hi : 3 * L / 4 + 1;
        std::size_t A = hi - lo + 1;
        double top = static_cast<double>(std::min(A, L - A));
        auto visits = maximum_visits(raw, top);
        ReportEntry e;
        e.quantity = "oscillation_period[" + a.fit_quantity + "]";
        e.inputs = {{"L", double(L)}, {"maximum", top}, {"visits", double(visits.size())}};
        if (visits.size() < 2) throw TooShort(fmt::format("L = {}: the maximum is reached fewer than twice", L));
        e.estimate = (visits.back() - visits.front()) / static_cast<double>(visits.size() - 1);
        e.window = {visits.front(), visits.back()};
        double spread = 0;
        for (std::size_t k = 1; k < visits.size(); ++k)
          spread = std::max(spread, std::abs(visits[k] - visits[k - 1] - e.estimate));
        e.stderr_ = spread;
        out.push_back(e);
        Ls.push_back(double(L));
        periods.push_back(e.estimate);
        break;
      }
      case FitKind::none: break;
    }
  }
  if (a.fit == FitKind::oscillation) {
    FitResult f = linear_fit(Ls, periods);
    ReportEntry e;
    e.quantity = "oscillation_period_vs_L[" + a.fit_quantity + "]";
    e.estimate = f.estimate;
    e.stderr_ = f.stderr_;
    e.window = {Ls.front(), Ls.back()};
    e.r2 = f.r2;
    e.inputs = {{"intercept", f.intercept}, {"sizes", double(Ls.size())}};
    e.expected = a.expected;
    out.push_back(e);
  }
  return out;
}

RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  const std::uint64_t seed = options.seed.value_or(spec.seed);
  fs::create_directories(options.out_dir);
  RunResult r;
  switch (spec.engine) {
    case Engine::sep_local:
    case Engine::sep_nonlocal: run_sep(spec, options, seed, r); break;
    case Engine::master_exact:
    case Engine::master_size: run_master(spec, options, seed, r); break;
    default: run_clifford(spec, options, seed, r);
  }
  auto more = analyze(spec, r.series);
  r.report.insert(r.report.end(), more.begin(), more.end());

  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& e : r.report) {
    nlohmann::ordered_json j;
    j["quantity"] = e.quantity;
    j["estimate"] = e.estimate;
    j["stderr"] = std::isfinite(e.stderr_) ? nlohmann::ordered_json(e.stderr_) : nlohmann::ordered_json(nullptr);
    j["window"] = {e.window[0], e.window[1]};
    j["r2"] = e.r2;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.inputs) in[k] = v;
    j["inputs"] = in;
    if (e.expected) j["expected"] = *e.expected;
    results.push_back(j);
  }
  nlohmann::ordered_json doc;
  doc["experiment"] = spec.name;
  doc["engine"] = std::string(to_string(spec.engine));
  doc["figure"] = spec.figure;
  doc["seed"] = seed;
  doc["results"] = results;
  auto path = options.out_dir / "fit_report.json";
  write_file(path, doc.dump(2) + "\n");
  r.files.push_back(path);
  return r;
}

}  // namespace scramble
