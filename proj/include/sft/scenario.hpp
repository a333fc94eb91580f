#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "solver.hpp"

namespace sft {

/// Malformed or invalid scenario input.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::filesystem::path path)
      : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

enum class ScenarioVariant { FT, Sylvester, SFT, ExtendedSFT, ExtendedFT, ExtendedSylvester };

/// Order of the two legs of an extended (coverage) mission.
enum class ExtendedLoop {
  NearestFirst,   // out to the nearest point, back from the farthest
  FarthestFirst,  // out to the farthest point, back from the nearest
};

struct Target {
  ReferenceSet set;
  double speed;  // nominal vehicle speed, m/s

  friend bool operator==(const Target&, const Target&) = default;
};

struct SolverOverrides {
  std::optional<double> step;
  std::optional<int> iters;
  std::optional<Vec2> x0;

  friend bool operator==(const SolverOverrides&, const SolverOverrides&) = default;
};

struct Scenario {
  std::string name;
  std::vector<Target> targets;
  Vec2 wind;
  ScenarioVariant variant {ScenarioVariant::SFT};
  ConstraintSet constraint {WholePlane{}};
  WitnessRule witness {WitnessRule::Generalized};
  ExtendedLoop loop {ExtendedLoop::NearestFirst};
  SolverOverrides solver;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// Names

namespace detail {

template <class E>
struct EnumName {
  E value;
  const char* name;
};

inline constexpr EnumName<ScenarioVariant> kVariantNames[] = {
    {ScenarioVariant::FT, "ft"},
    {ScenarioVariant::Sylvester, "sylvester"},
    {ScenarioVariant::SFT, "sft"},
    {ScenarioVariant::ExtendedSFT, "extended_sft"},
    {ScenarioVariant::ExtendedFT, "extended_ft"},
    {ScenarioVariant::ExtendedSylvester, "extended_sylvester"},
};

inline constexpr EnumName<WitnessRule> kWitnessNames[] = {
    {WitnessRule::Generalized, "generalized"},
    {WitnessRule::Euclidean, "euclidean"},
};

inline constexpr EnumName<ExtendedLoop> kLoopNames[] = {
    {ExtendedLoop::NearestFirst, "nearest_first"},
    {ExtendedLoop::FarthestFirst, "farthest_first"},
};

template <class E, std::size_t N>
const char* name_of(const EnumName<E> (&table)[N], E v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "?";
}

template <class E, std::size_t N>
E parse_enum(const EnumName<E> (&table)[N], const std::string& s, const std::string& field) {
  for (const auto& e : table) {
    if (s == e.name) return e.value;
  }
  std::string allowed;
  for (const auto& e : table) allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
  throw ScenarioError(field + ": unknown value \"" + s + "\" (expected one of " + allowed + ")");
}

}  // namespace detail

inline const char* to_string(ScenarioVariant v) { return detail::name_of(detail::kVariantNames, v); }
inline const char* to_string(WitnessRule v) { return detail::name_of(detail::kWitnessNames, v); }
inline const char* to_string(ExtendedLoop v) { return detail::name_of(detail::kLoopNames, v); }

inline ScenarioVariant parse_variant(const std::string& s) {
  return detail::parse_enum(detail::kVariantNames, s, "variant");
}
inline WitnessRule parse_witness(const std::string& s) {
  return detail::parse_enum(detail::kWitnessNames, s, "witness");
}
inline ExtendedLoop parse_loop(const std::string& s) {
  return detail::parse_enum(detail::kLoopNames, s, "loop");
}

// ---------------------------------------------------------------------------
// Validation and problem construction

inline void validate(const Scenario& s) {
  if (s.targets.empty()) throw ScenarioError("targets: at least one target is required");
  if (!is_finite(s.wind)) throw ScenarioError("wind: components must be finite");
  for (std::size_t i = 0; i < s.targets.size(); ++i) {
    const double sp = s.targets[i].speed;
    if (!(sp > 0.0) || !std::isfinite(sp)) {
      throw ScenarioError("targets[" + std::to_string(i) + "].speed: must be positive");
    }
    if (sp - norm(s.wind) < kAdmissibilityMargin) {
      throw ScenarioError("targets[" + std::to_string(i) +
                          "]: wind speed exceeds vehicle speed");
    }
  }
}

/// Terms per variant, for each target with dynamics F = disk(wind, speed):
///   ft                 one group: from-nearest + to-nearest for every target
///   sylvester          {from-nearest} per target
///   sft                {from-nearest, to-nearest} per target
///   extended_sft       {to-nearest, from-farthest} per target
///   extended_ft        one group of all extended_sft pairs
///   extended_sylvester {from-nearest} and {from-farthest} per target
/// With ExtendedLoop::FarthestFirst the extended pairs become
/// {to-farthest, from-nearest}.
inline Problem build_problem(const Scenario& s, std::optional<Vec2> wind_override = {}) {
  Scenario local = s;
  if (wind_override) local.wind = *wind_override;
  validate(local);

  const bool farthest_first = local.loop == ExtendedLoop::FarthestFirst;
  auto extended_pair = [&](const DynamicSet& F, const ReferenceSet& o) -> TermGroup {
    if (farthest_first) {
      return {Term(F, o, Direction::ToTarget, Extremum::Farthest),
              Term(F, o, Direction::FromTarget, Extremum::Nearest)};
    }
    return {Term(F, o, Direction::ToTarget, Extremum::Nearest),
            Term(F, o, Direction::FromTarget, Extremum::Farthest)};
  };

  std::vector<TermGroup> groups;
  TermGroup single;
  for (const auto& t : local.targets) {
    const DynamicSet F(local.wind, t.speed);
    switch (local.variant) {
      case ScenarioVariant::FT:
        single.emplace_back(F, t.set, Direction::FromTarget, Extremum::Nearest);
        single.emplace_back(F, t.set, Direction::ToTarget, Extremum::Nearest);
        break;
      case ScenarioVariant::Sylvester:
        groups.push_back({Term(F, t.set, Direction::FromTarget, Extremum::Nearest)});
        break;
      case ScenarioVariant::SFT:
        groups.push_back({Term(F, t.set, Direction::FromTarget, Extremum::Nearest),
                          Term(F, t.set, Direction::ToTarget, Extremum::Nearest)});
        break;
      case ScenarioVariant::ExtendedSFT:
        groups.push_back(extended_pair(F, t.set));
        break;
      case ScenarioVariant::ExtendedFT: {
        auto pair = extended_pair(F, t.set);
        single.insert(single.end(), pair.begin(), pair.end());
        break;
      }
      case ScenarioVariant::ExtendedSylvester:
        groups.push_back({Term(F, t.set, Direction::FromTarget, Extremum::Nearest)});
        groups.push_back({Term(F, t.set, Direction::FromTarget, Extremum::Farthest)});
        break;
    }
  }
  if (!single.empty()) groups.push_back(std::move(single));
  return Problem(std::move(groups), local.constraint, local.name, local.witness);
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
//
// {
//   "name": "info4",
//   "wind": [-0.6, 0.6],
//   "variant": "sylvester",
//   "witness": "generalized",          optional
//   "loop": "nearest_first",           optional
//   "constraint": {"shape": "plane"},  optional; or a box/disk shape object
//   "targets": [{"shape": "disk", "center": [30, 350], "size": 10, "speed": 2}],
//   "solver": {"step": 60, "iters": 50000, "x0": [100, 100]}   optional
// }
//
// A box "size" is a half extent, either one number or [h1, h2].

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ScenarioError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

inline double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ScenarioError(where + ": expected a number");
  return j.get<double>();
}

inline Vec2 as_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ScenarioError(where + ": expected [x, y]");
  return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ScenarioError(where + ": expected a string");
  return j.get<std::string>();
}

inline ConstraintSet parse_shape(const json& j, const std::string& where) {
  const std::string shape = as_string(require(j, "shape", where), where + ".shape");
  if (shape == "plane") return WholePlane{};
  const Vec2 c = as_vec2(require(j, "center", where), where + ".center");
  const json& size = require(j, "size", where);
  try {
    if (shape == "disk") return Disk(c, as_number(size, where + ".size"));
    if (shape == "box") {
      if (size.is_array()) return Box(c, as_vec2(size, where + ".size"));
      return Box(c, as_number(size, where + ".size"));
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  throw ScenarioError(where + ".shape: unknown shape \"" + shape + "\"");
}

inline json shape_json(const ConstraintSet& s) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, WholePlane>) {
          return json{{"shape", "plane"}};
        } else if constexpr (std::is_same_v<T, Box>) {
          json size = o.half.x1 == o.half.x2 ? json(o.half.x1) : json{o.half.x1, o.half.x2};
          return json{{"shape", "box"}, {"center", {o.center.x1, o.center.x2}}, {"size", size}};
        } else {
          return json{{"shape", "disk"}, {"center", {o.center.x1, o.center.x2}},
                      {"size", o.radius}};
        }
      },
      s);
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
  using detail::as_number;
  using detail::as_string;
  using detail::as_vec2;
  using detail::require;
  if (!j.is_object()) throw ScenarioError("scenario: expected a JSON object");
  Scenario s;
  s.name = j.contains("name") ? as_string(j["name"], "name") : std::string{};
  s.wind = j.contains("wind") ? as_vec2(j["wind"], "wind") : Vec2{};
  s.variant = parse_variant(as_string(require(j, "variant", "scenario"), "variant"));
  if (j.contains("witness")) s.witness = parse_witness(as_string(j["witness"], "witness"));
  if (j.contains("loop")) s.loop = parse_loop(as_string(j["loop"], "loop"));
  if (j.contains("constraint")) s.constraint = detail::parse_shape(j["constraint"], "constraint");

  const auto& targets = require(j, "targets", "scenario");
  if (!targets.is_array()) throw ScenarioError("targets: expected an array");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string where = "targets[" + std::to_string(i) + "]";
    const ConstraintSet shape = detail::parse_shape(targets[i], where);
    if (std::holds_alternative<WholePlane>(shape)) {
      throw ScenarioError(where + ".shape: a target must be a box or a disk");
    }
    const double speed = as_number(require(targets[i], "speed", where), where + ".speed");
    ReferenceSet set = std::holds_alternative<Box>(shape) ? ReferenceSet(std::get<Box>(shape))
                                                          : ReferenceSet(std::get<Disk>(shape));
    s.targets.push_back({std::move(set), speed});
  }
  if (j.contains("solver")) {
    const auto& sv = j["solver"];
    if (sv.contains("step")) s.solver.step = as_number(sv["step"], "solver.step");
    if (sv.contains("iters")) {
      s.solver.iters = static_cast<int>(as_number(sv["iters"], "solver.iters"));
    }
    if (sv.contains("x0")) s.solver.x0 = as_vec2(sv["x0"], "solver.x0");
  }
  validate(s);
  return s;
}

inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  return scenario_from_json(j);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed", path);
  return ss.str();
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  try {
    return parse_scenario(read_file(path));
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["wind"] = {s.wind.x1, s.wind.x2};
  j["variant"] = to_string(s.variant);
  j["witness"] = to_string(s.witness);
  j["loop"] = to_string(s.loop);
  j["constraint"] = detail::shape_json(s.constraint);
  j["targets"] = nlohmann::json::array();
  for (const auto& t : s.targets) {
    auto tj = detail::shape_json(as_constraint(t.set));
    tj["speed"] = t.speed;
    j["targets"].push_back(tj);
  }
  if (s.solver.step || s.solver.iters || s.solver.x0) {
    nlohmann::json sv = nlohmann::json::object();
    if (s.solver.step) sv["step"] = *s.solver.step;
    if (s.solver.iters) sv["iters"] = *s.solver.iters;
    if (s.solver.x0) sv["x0"] = {s.solver.x0->x1, s.solver.x0->x2};
    j["solver"] = sv;
  }
  return j;
}

inline std::string write_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Scenario sets: a list of cases, each a scenario file plus overrides.
//
// {"name": "...", "cases": [{"id": "1", "scenario": "info4.json",
//   "wind": [-0.7, 0.7], "variant": "sylvester", "witness": "euclidean",
//   "loop": "farthest_first"}]}
// Scenario paths are relative to the set file.

struct ScenarioCase {
  std::string id;
  Scenario scenario;
};

inline std::vector<ScenarioCase> load_scenario_set(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(path.string() + ": parse error: " + e.what());
  }
  const auto& cases = detail::require(j, "cases", path.string());
  if (!cases.is_array() || cases.empty()) {
    throw ScenarioError(path.string() + ": cases: expected a nonempty array");
  }
  std::vector<ScenarioCase> out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const std::string where = path.string() + ": cases[" + std::to_string(i) + "]";
    const std::string file = detail::as_string(detail::require(c, "scenario", where), where);
    Scenario s = load_scenario(path.parent_path() / file);
    try {
      if (c.contains("wind")) s.wind = detail::as_vec2(c["wind"], "wind");
      if (c.contains("variant")) s.variant = parse_variant(detail::as_string(c["variant"], "variant"));
      if (c.contains("witness")) s.witness = parse_witness(detail::as_string(c["witness"], "witness"));
      if (c.contains("loop")) s.loop = parse_loop(detail::as_string(c["loop"], "loop"));
      validate(s);
    } catch (const ScenarioError& e) {
      throw ScenarioError(where + ": " + e.what());
    }
    std::string id = c.contains("id") ? detail::as_string(c["id"], where + ".id")
                                      : std::to_string(i + 1);
    out.push_back({std::move(id), std::move(s)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wind-neglected vs wind-included comparison

struct CaseReport {
  std::string case_id;
  Vec2 x_neglected;
  double Z_N {0.0};  // true-wind objective at x_neglected
  Vec2 x_included;
  double Z_I {0.0};  // true-wind objective at x_included
  double abs_imp {0.0};
  double rel_imp {0.0};  // percent
  double oracle_value {std::nan("")};
  Vec2 oracle_argmin;
  std::vector<std::string> warnings;
};

struct RunOptions {
  bool run_oracle {true};
  unsigned oracle_threads {1};
  std::optional<oracle::GridSpec> grid;
};

inline SolverConfig scenario_config(const Scenario& s, const Problem& P) {
  SolverConfig cfg = default_config(P);
  if (s.solver.step) cfg.step_c = *s.solver.step;
  if (s.solver.iters) cfg.max_iters = *s.solver.iters;
  return cfg;
}

inline std::vector<Vec2> scenario_starts(const Scenario& s, const Problem& P) {
  if (s.solver.x0) return {*s.solver.x0};
  return default_starts(P);
}

/// Solves the scenario with the wind ignored and with it included, scoring
/// both locations under the true wind.
inline CaseReport run_case(const Scenario& s, std::optional<Vec2> wind_override = {},
                           const RunOptions& opt = {}) {
  const Vec2 wind = wind_override.value_or(s.wind);
  const Problem included = build_problem(s, wind);
  const Problem neglected = build_problem(s, Vec2{});

  CaseReport rep;
  rep.case_id = s.name;
  const SolveResult rn =
      multistart_solve(neglected, scenario_config(s, neglected), scenario_starts(s, neglected));
  const SolveResult ri =
      multistart_solve(included, scenario_config(s, included), scenario_starts(s, included));
  rep.x_neglected = rn.best_x;
  rep.x_included = ri.best_x;
  rep.Z_N = evaluate(included, rn.best_x).objective;
  rep.Z_I = ri.best_value;
  rep.abs_imp = rep.Z_N - rep.Z_I;
  rep.rel_imp = rep.Z_N > 0.0 ? rep.abs_imp / rep.Z_N * 100.0 : 0.0;
  rep.warnings = rn.warnings;
  rep.warnings.insert(rep.warnings.end(), ri.warnings.begin(), ri.warnings.end());
  if (opt.run_oracle) {
    const oracle::GridResult g =
        oracle::grid_min(included, opt.grid.value_or(oracle::auto_grid(included)),
                         opt.oracle_threads);
    rep.oracle_value = g.value;
    rep.oracle_argmin = g.argmin;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Emission

enum class TableFormat { Csv, Markdown };

inline void atomic_write(const std::filesystem::path& out, const std::string& content) {
  std::filesystem::path tmp = out;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing", out);
    f << content;
    f.flush();
    if (!f) throw IoError("write failed", out);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, out, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace file", out);
  }
}

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  std::string s = os.str();
  if (s == "-0" || s == "-0.00") s.erase(0, 1);
  return s;
}

inline std::string rounded(double v) { return fixed(std::round(v), 0); }

}  // namespace detail

/// Table text with seconds and coordinates rounded to integers.
inline std::string format_table(const std::vector<CaseReport>& reports, TableFormat fmt) {
  using detail::fixed;
  using detail::rounded;
  std::ostringstream os;
  if (fmt == TableFormat::Csv) {
    os << "case_id,xN1,xN2,Z_N,xI1,xI2,Z_I,abs_imp,rel_imp,oracle_value\n";
    for (const auto& r : reports) {
      os << r.case_id << ',' << rounded(r.x_neglected.x1) << ',' << rounded(r.x_neglected.x2)
         << ',' << rounded(r.Z_N) << ',' << rounded(r.x_included.x1) << ','
         << rounded(r.x_included.x2) << ',' << rounded(r.Z_I) << ',' << rounded(r.abs_imp)
         << ',' << fixed(r.rel_imp, 2) << ','
         << (std::isnan(r.oracle_value) ? std::string{} : rounded(r.oracle_value)) << '\n';
    }
  } else {
    os << "| Case | x*(neglected) | Z_N | x*(included) | Z_I | AbsImp | RelImp (%) | Oracle |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
      os << "| " << r.case_id << " | (" << rounded(r.x_neglected.x1) << ","
         << rounded(r.x_neglected.x2) << ") | " << rounded(r.Z_N) << " | ("
         << rounded(r.x_included.x1) << "," << rounded(r.x_included.x2) << ") | "
         << rounded(r.Z_I) << " | " << rounded(r.abs_imp) << " | " << fixed(r.rel_imp, 2)
         << " | " << (std::isnan(r.oracle_value) ? std::string("-") : rounded(r.oracle_value))
         << " |\n";
    }
  }
  return os.str();
}

inline void emit_table(const std::vector<CaseReport>& reports, TableFormat fmt,
                       const std::filesystem::path& out) {
  if (reports.empty()) throw std::invalid_argument("emit_table: no reports");
  atomic_write(out, format_table(reports, fmt));
}

/// Standalone SVG: target outlines (class "target"), the two optima
/// (class "marker"), the wind arrow scaled x50 (class "wind-arrow", omitted
/// for zero wind) and one dynamic-set inset per vehicle speed.
inline std::string render_plot(const Scenario& s, const CaseReport& r) {
  using detail::fixed;
  double lo1 = INFINITY, lo2 = INFINITY, hi1 = -INFINITY, hi2 = -INFINITY;
  auto grow = [&](Vec2 p) {
    lo1 = std::min(lo1, p.x1);
    hi1 = std::max(hi1, p.x1);
    lo2 = std::min(lo2, p.x2);
    hi2 = std::max(hi2, p.x2);
  };
  Vec2 centroid;
  for (const auto& t : s.targets) {
    const Vec2 c = center_of(t.set);
    centroid += c / static_cast<double>(s.targets.size());
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Box>) {
            for (const Vec2& v : vertices(o)) grow(v);
          } else {
            grow(o.center - Vec2{o.radius, o.radius});
            grow(o.center + Vec2{o.radius, o.radius});
          }
        },
        t.set);
  }
  grow(r.x_neglected);
  grow(r.x_included);
  const Vec2 arrow_tip = centroid + s.wind * 50.0;
  const bool has_wind = !is_zero(s.wind);
  if (has_wind) grow(arrow_tip);
  const double pad = 0.08 * std::max(hi1 - lo1, hi2 - lo2) + 1.0;
  lo1 -= pad;
  lo2 -= pad;
  hi1 += pad;
  hi2 += pad;
  const double width = 800.0;
  const double scale = width / (hi1 - lo1);
  const double height = (hi2 - lo2) * scale;
  auto px = [&](Vec2 p) { return Vec2{(p.x1 - lo1) * scale, (hi2 - p.x2) * scale}; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
     << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 2) << ' ' << fixed(height, 2)
     << "\">\n";
  os << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 Z\" fill=\"black\"/></marker></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"10\" y=\"20\" font-size=\"14\">" << s.name << "</text>\n";
  for (const auto& t : s.targets) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Box>) {
            const auto v = vertices(o);
            const Vec2 p0 = px(v[0]), p1 = px(v[1]), p2 = px(v[3]), p3 = px(v[2]);
            os << "<path class=\"target\" d=\"M" << fixed(p0.x1, 2) << ',' << fixed(p0.x2, 2)
               << " L" << fixed(p1.x1, 2) << ',' << fixed(p1.x2, 2) << " L" << fixed(p2.x1, 2)
               << ',' << fixed(p2.x2, 2) << " L" << fixed(p3.x1, 2) << ',' << fixed(p3.x2, 2)
               << " Z\" fill=\"#cfe3ff\" stroke=\"#1f4e99\"/>\n";
          } else {
            const Vec2 c = px(o.center);
            os << "<circle class=\"target\" cx=\"" << fixed(c.x1, 2) << "\" cy=\""
               << fixed(c.x2, 2) << "\" r=\"" << fixed(std::max(o.radius * scale, 1.0), 2)
               << "\" fill=\"#cfe3ff\" stroke=\"#1f4e99\"/>\n";
          }
        },
        t.set);
  }
  auto marker = [&](Vec2 p, const char* id, const char* color, const std::string& label) {
    const Vec2 q = px(p);
    os << "<path class=\"marker\" id=\"" << id << "\" d=\"M" << fixed(q.x1 - 6, 2) << ','
       << fixed(q.x2 - 6, 2) << " L" << fixed(q.x1 + 6, 2) << ',' << fixed(q.x2 + 6, 2) << " M"
       << fixed(q.x1 - 6, 2) << ',' << fixed(q.x2 + 6, 2) << " L" << fixed(q.x1 + 6, 2) << ','
       << fixed(q.x2 - 6, 2) << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    os << "<text class=\"label\" x=\"" << fixed(q.x1 + 9, 2) << "\" y=\"" << fixed(q.x2 - 9, 2)
       << "\" font-size=\"12\" fill=\"" << color << "\">" << label << "</text>\n";
  };
  marker(r.x_neglected, "neglected", "#777777",
         "wind neglected (" + detail::rounded(r.x_neglected.x1) + "," +
             detail::rounded(r.x_neglected.x2) + ")");
  marker(r.x_included, "included", "#d08000",
         "wind included (" + detail::rounded(r.x_included.x1) + "," +
             detail::rounded(r.x_included.x2) + ")");
  if (has_wind) {
    const Vec2 a = px(centroid), b = px(arrow_tip);
    os << "<line class=\"wind-arrow\" x1=\"" << fixed(a.x1, 2) << "\" y1=\"" << fixed(a.x2, 2)
       << "\" x2=\"" << fixed(b.x1, 2) << "\" y2=\"" << fixed(b.x2, 2)
       << "\" stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#head)\"/>\n";
  }
  // Dynamic-set insets along the top edge: disk of radius speed centered at
  // the wind vector, with the origin marked.
  std::vector<double> speeds;
  for (const auto& t : s.targets) {
    if (std::find(speeds.begin(), speeds.end(), t.speed) == speeds.end()) speeds.push_back(t.speed);
  }
  const double vmax = *std::max_element(speeds.begin(), speeds.end()) + norm(s.wind);
  const double inset_scale = 30.0 / vmax;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const Vec2 o{width - 45.0 - 75.0 * static_cast<double>(i), 45.0};
    os << "<g class=\"dynamics\"><circle cx=\"" << fixed(o.x1 + s.wind.x1 * inset_scale, 2)
       << "\" cy=\"" << fixed(o.x2 - s.wind.x2 * inset_scale, 2) << "\" r=\""
       << fixed(speeds[i] * inset_scale, 2)
       << "\" fill=\"none\" stroke=\"#444\"/><rect x=\"" << fixed(o.x1 - 1.5, 2) << "\" y=\""
       << fixed(o.x2 - 1.5, 2) << "\" width=\"3\" height=\"3\"/></g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_plot(const Scenario& s, const CaseReport& r, const std::filesystem::path& out) {
  atomic_write(out, render_plot(s, r));
}

}  // namespace sft
