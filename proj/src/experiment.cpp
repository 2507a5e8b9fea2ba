#include "scramble/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "scramble/circuit.hpp"
#include "scramble/master_eq.hpp"
#include "scramble/sep.hpp"

namespace scramble {

SpecError::SpecError(std::string source, std::size_t line, std::string field, const std::string& message)
    : InvalidArgument(line ? fmt::format("{}:{}: field '{}': {}", source, line, field, message)
                           : fmt::format("{}: field '{}': {}", source, field, message)),
      line_(line),
      field_(std::move(field)) {}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::sep_local: return "sep-local";
    case Engine::sep_nonlocal: return "sep-nonlocal";
    case Engine::master_exact: return "master-exact";
    case Engine::master_size: return "master-size";
    case Engine::clifford_1d: return "clifford-1d";
    case Engine::clifford_nonlocal: return "clifford-nonlocal";
    case Engine::clifford_floquet: return "clifford-floquet";
  }
  return "?";
}

double Scaled::at(std::size_t L) const { return coeff * std::pow(static_cast<double>(L), power); }

std::size_t Scaled::count_at(std::size_t L) const { return static_cast<std::size_t>(std::llround(at(L))); }

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool quoted = false;
  bool used = false;
};

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) { parse(text); }

  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto it = entries_.find(key);
    throw SpecError(source_, it == entries_.end() ? 0 : it->second.line, key, msg);
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::size_t line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  const Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& need(const std::string& key) {
    const Entry* e = find(key);
    if (!e) throw SpecError(source_, 0, key, "required field is missing");
    return *e;
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    const Entry* e = fallback ? find(key) : &need(key);
    if (!e) return *fallback;
    if (e->value.empty()) fail(key, "empty value");
    return e->value;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const Entry* e = fallback ? find(key) : &need(key);
    if (!e) return *fallback;
    return parse_double(key, e->value);
  }

  std::optional<double> optional_number(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return parse_double(key, e->value);
  }

  std::uint64_t integer(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) {
    const Entry* e = fallback ? find(key) : &need(key);
    if (!e) return *fallback;
    return parse_uint(key, e->value);
  }

  bool boolean(const std::string& key, bool fallback) {
    const Entry* e = find(key);
    if (!e) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(key, "expected true or false, got '" + e->value + "'");
  }

  std::vector<std::uint64_t> integer_list(const std::string& key) {
    const Entry& e = need(key);
    std::string v = e.value;
    std::vector<std::uint64_t> out;
    if (!v.empty() && v.front() == '[') {
      if (v.back() != ']') fail(key, "unterminated list");
      std::stringstream ss(v.substr(1, v.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(key, "empty list element");
        out.push_back(parse_uint(key, item));
      }
    } else {
      out.push_back(parse_uint(key, v));
    }
    if (out.empty()) fail(key, "list is empty");
    return out;
  }

  std::optional<Scaled> scaled(const std::string& key, bool required) {
    const Entry* e = required ? &need(key) : find(key);
    if (!e) return std::nullopt;
    // c, L, c*L, L^k, c*L^k
    std::string v = e->value;
    v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
    Scaled s{1.0, 0};
    auto pos = v.find('L');
    if (pos == std::string::npos) {
      s.coeff = parse_double(key, v);
      return s;
    }
    std::string head = v.substr(0, pos), tail = v.substr(pos + 1);
    if (!head.empty()) {
      if (head.back() != '*') fail(key, "expected an expression like 2*L^2, got '" + e->value + "'");
      s.coeff = parse_double(key, head.substr(0, head.size() - 1));
    }
    s.power = 1;
    if (!tail.empty()) {
      if (tail.front() != '^') fail(key, "expected an expression like 2*L^2, got '" + e->value + "'");
      s.power = static_cast<int>(parse_uint(key, tail.substr(1)));
      if (s.power > 3) fail(key, "exponent of L must be at most 3");
    }
    return s;
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_)
      if (!e.used) throw SpecError(source_, e.line, key, "unknown field");
  }

 private:
  double parse_double(const std::string& key, const std::string& v) const {
    double x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
      fail(key, "expected a number, got '" + v + "'");
    return x;
  }

  std::uint64_t parse_uint(const std::string& key, const std::string& v) const {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec == std::errc() && ptr == v.data() + v.size()) return x;
    // Accept integral values written in float notation, like 1e5.
    double d = 0;
    auto [p2, ec2] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec2 == std::errc() && p2 == v.data() + v.size() && d >= 0 && d < 1.8e19 && d == std::floor(d))
      return static_cast<std::uint64_t>(d);
    fail(key, "expected a nonnegative integer, got '" + v + "'");
  }

  void parse(std::string_view text) {
    std::string section;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      // Strip a comment that is not inside a string.
      bool in_str = false;
      std::size_t cut = raw.size();
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') in_str = !in_str;
        if (raw[i] == '#' && !in_str) {
          cut = i;
          break;
        }
      }
      std::string line = trim(std::string_view(raw).substr(0, cut));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw SpecError(source_, lineno, line, "malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section != "engine" && section != "params" && section != "analysis")
          throw SpecError(source_, lineno, section, "unknown section (expected engine, params or analysis)");
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SpecError(source_, lineno, line, "expected key = value");
      if (section.empty()) throw SpecError(source_, lineno, trim(line.substr(0, eq)), "key outside any section");
      std::string key = section + "." + trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      Entry e;
      e.line = lineno;
      if (!value.empty() && value.front() == '"') {
        if (value.size() < 2 || value.back() != '"') throw SpecError(source_, lineno, key, "unterminated string");
        value = value.substr(1, value.size() - 2);
        e.quoted = true;
      }
      e.value = value;
      if (!entries_.emplace(key, e).second) throw SpecError(source_, lineno, key, "duplicate field");
    }
  }

  std::string source_;
  std::map<std::string, Entry> entries_;
};

Engine parse_engine(Reader& r) {
  std::string kind = r.string("engine.kind");
  for (Engine e : {Engine::sep_local, Engine::sep_nonlocal, Engine::master_exact, Engine::master_size,
                   Engine::clifford_1d, Engine::clifford_nonlocal, Engine::clifford_floquet})
    if (kind == to_string(e)) return e;
  r.fail("engine.kind", "unknown engine '" + kind + "'");
}

bool is_clifford(Engine e) {
  return e == Engine::clifford_1d || e == Engine::clifford_nonlocal || e == Engine::clifford_floquet;
}

bool is_sep(Engine e) { return e == Engine::sep_local || e == Engine::sep_nonlocal; }

void read_analysis(Reader& r, ExperimentSpec& s) {
  AnalysisSpec& a = s.analysis;
  if (r.has("analysis.collapse")) {
    a.collapse_quantity = r.string("analysis.collapse");
    if (a.collapse_quantity != "size" && a.collapse_quantity != "ee")
      r.fail("analysis.collapse", "expected \"size\" or \"ee\"");
    a.collapse_z = r.number("analysis.collapse_z");
    a.collapse_alpha = r.number("analysis.collapse_alpha");
    a.contrast_z = r.optional_number("analysis.contrast_z");
    a.contrast_alpha = r.optional_number("analysis.contrast_alpha");
    if (a.contrast_z.has_value() != a.contrast_alpha.has_value())
      r.fail(a.contrast_z ? "analysis.contrast_z" : "analysis.contrast_alpha",
             "contrast_z and contrast_alpha go together");
    a.collapse_window_lo = r.number("analysis.collapse_window_lo", 0.0);
    a.collapse_window_hi = r.number("analysis.collapse_window_hi", 1.0);
    if (!(a.collapse_window_lo >= 0 && a.collapse_window_lo < a.collapse_window_hi && a.collapse_window_hi <= 1))
      r.fail("analysis.collapse_window_hi", "collapse window must satisfy 0 <= lo < hi <= 1");
    if (s.L.size() < 2) r.fail("analysis.collapse", "a collapse needs at least two system sizes");
  }
  std::string fit = r.string("analysis.fit", std::string("none"));
  if (fit == "none")
    a.fit = FitKind::none;
  else if (fit == "exponential")
    a.fit = FitKind::exponential;
  else if (fit == "power_law")
    a.fit = FitKind::power_law;
  else if (fit == "saturation")
    a.fit = FitKind::saturation;
  else if (fit == "oscillation")
    a.fit = FitKind::oscillation;
  else
    r.fail("analysis.fit", "expected none, exponential, power_law, saturation or oscillation");
  a.fit_quantity = r.string("analysis.fit_quantity", std::string("size"));
  if (a.fit_quantity != "size" && a.fit_quantity != "ee") r.fail("analysis.fit_quantity", "expected \"size\" or \"ee\"");
  a.fit_per_site = r.boolean("analysis.fit_per_site", false);
  a.fit_lo = r.scaled("analysis.fit_lo", false);
  a.fit_hi = r.scaled("analysis.fit_hi", false);
  a.tail_fraction = r.number("analysis.tail_fraction", 0.2);
  if (!(a.tail_fraction > 0 && a.tail_fraction <= 1)) r.fail("analysis.tail_fraction", "must lie in (0, 1]");
  a.expected = r.optional_number("analysis.expected");
  if (a.fit == FitKind::oscillation && s.L.size() < 2) r.fail("analysis.fit", "an oscillation fit needs two or more L");
  if (a.fit == FitKind::oscillation && s.engine != Engine::clifford_floquet)
    r.fail("analysis.fit", "oscillation fits apply to the floquet engine");
  bool ee_used = a.collapse_quantity == "ee" || (a.fit != FitKind::none && a.fit_quantity == "ee");
  bool size_used = a.collapse_quantity == "size" || (a.fit != FitKind::none && a.fit_quantity == "size");
  if (ee_used && !s.record_ee) r.fail("analysis.fit_quantity", "analysis reads ee but the engine does not record it");
  if (size_used && !s.record_size) r.fail("analysis.fit_quantity", "analysis reads size but the engine does not record it");
}

// Delegate range checks to the engines' own validation, reporting the first
// offending L.
template <class Check>
void engine_check(Reader& r, const ExperimentSpec& s, Check&& check) {
  for (std::size_t L : s.L) {
    try {
      check(L);
    } catch (const InvalidArgument& e) {
      throw SpecError(r.source(), r.line_of("params.L"), "params", fmt::format("L = {}: {}", L, e.what()));
    }
  }
}

}  // namespace

ExperimentSpec parse_spec(std::string_view text, const std::string& source) {
  Reader r(text, source);
  ExperimentSpec s;
  s.source = source;
  s.name = r.string("engine.name");
  s.engine = parse_engine(r);
  s.figure = r.string("engine.figure", std::string());

  for (auto v : r.integer_list("params.L")) s.L.push_back(static_cast<std::size_t>(v));
  s.seed = r.integer("params.seed");
  const Engine e = s.engine;

  if (is_sep(e) || is_clifford(e)) {
    s.trajectories = r.integer("params.trajectories");
    s.periods = *r.scaled("params.periods", true);
    s.record_points = r.integer("params.record_points", 0);
    s.log_points = r.integer("params.log_points", 0);
  }
  if (is_sep(e)) {
    s.A = r.number("params.A", 0.25);
    s.B = r.number("params.B", 0.25);
    s.dt = r.number("params.dt", 1.0);
    s.record_ee = false;
  }
  if (e == Engine::master_exact || e == Engine::master_size) {
    if (e == Engine::master_exact) s.A = r.number("params.A", 0.25);
    s.B = r.number("params.B", 0.25);
    s.t_max = *r.scaled("params.t_max", true);
    s.t_step = *r.scaled("params.t_step", true);
    s.compare_mc = r.boolean("params.compare_mc", false);
    if (s.compare_mc) {
      s.trajectories = r.integer("params.trajectories");
      s.mc_dt = r.number("params.mc_dt", 0.01);
    }
  }
  if (is_clifford(e)) {
    s.p = r.number("params.p", 0.5);
    s.interaction = r.boolean("params.interaction", true);
    std::string q = r.string("params.record", std::string("size"));
    if (q == "size") {
      s.record_size = true, s.record_ee = false;
    } else if (q == "ee") {
      s.record_size = false, s.record_ee = true;
    } else if (q == "both") {
      s.record_size = true, s.record_ee = true;
    } else {
      r.fail("params.record", "expected \"size\", \"ee\" or \"both\"");
    }
    s.subsystem_lo = r.integer("params.subsystem_lo", 0);
    s.subsystem_hi = r.integer("params.subsystem_hi", 0);
    if ((s.subsystem_lo == 0) != (s.subsystem_hi == 0))
      r.fail(s.subsystem_lo ? "params.subsystem_lo" : "params.subsystem_hi", "give both subsystem bounds or neither");
    s.single_majorana = r.boolean("params.single_majorana", false);
    std::string gates = r.string("params.gate_action", std::string("restricted"));
    if (gates != "restricted" && gates != "exact") r.fail("params.gate_action", "expected \"restricted\" or \"exact\"");
    s.exact_gates = gates == "exact";
  }
  read_analysis(r, s);
  r.reject_unused();

  if (s.trajectories == 0) r.fail("params.trajectories", "must be positive");
  if (is_sep(e) || is_clifford(e)) {
    if (s.periods.coeff <= 0) r.fail("params.periods", "must be positive");
  }
  if (e == Engine::master_exact || e == Engine::master_size) {
    if (s.t_max.coeff <= 0) r.fail("params.t_max", "must be positive");
    if (s.t_step.coeff <= 0) r.fail("params.t_step", "must be positive");
  }

  switch (e) {
    case Engine::sep_local:
    case Engine::sep_nonlocal:
      engine_check(r, s, [&](std::size_t L) {
        SepConfig c;
        c.L = L;
        c.A = s.A;
        c.B = s.B;
        c.dt = s.dt;
        c.periods = s.periods.count_at(L);
        c.trajectories = s.trajectories;
        c.variant = e == Engine::sep_local ? SepVariant::local : SepVariant::nonlocal;
        c.validate();
      });
      break;
    case Engine::master_exact:
      engine_check(r, s, [&](std::size_t L) {
        if (L > kMaxExactSites) throw DimensionTooLarge("exact height solves are limited to L <= 14");
        if (L < 5) throw TooSmall("height generator needs L >= 5");
        if (s.A < 0 || s.B < 0) throw InvalidArgument("rates must be nonnegative");
        if (s.compare_mc && 4 * std::max(s.A, s.B) * s.mc_dt > 1)
          throw InvalidArgument("mc_dt too large: 4 A dt and 4 B dt must not exceed 1");
      });
      break;
    case Engine::master_size:
      engine_check(r, s, [&](std::size_t L) {
        if (L < 5) throw TooSmall("size generator needs L >= 5");
        if (s.B < 0) throw InvalidArgument("rate B must be nonnegative");
        if (s.compare_mc && 4 * s.B * s.mc_dt > 1) throw InvalidArgument("mc_dt too large: 4 B dt must not exceed 1");
      });
      break;
    default:
      engine_check(r, s, [&](std::size_t L) {
        CircuitConfig c;
        c.L = L;
        c.variant = e == Engine::clifford_1d         ? CircuitVariant::local_random
                    : e == Engine::clifford_nonlocal ? CircuitVariant::nonlocal
                                                     : CircuitVariant::floquet;
        c.p = s.p;
        c.periods = s.periods.count_at(L);
        c.trajectories = s.trajectories;
        c.subsystem_lo = s.subsystem_lo;
        c.subsystem_hi = s.subsystem_hi;
        c.validate();
      });
  }
  return s;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path.string(), 0, "file", "cannot open spec file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path.filename().string());
}

std::vector<ExperimentSpec> load_manifest(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".toml") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ExperimentSpec> out;
  for (const auto& f : files) out.push_back(load_spec(f));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

std::filesystem::path default_experiments_dir() {
  if (const char* env = std::getenv("SCRAMBLE_EXPERIMENTS")) return env;
  return SCRAMBLE_EXPERIMENTS_DIR;
}

}  // namespace scramble
