#include <filesystem>
#include <fstream>
#include <regex>

#include <unistd.h>

#include <gtest/gtest.h>

#include "sft/scenario.hpp"

using namespace sft;
namespace fs = std::filesystem;

namespace {

const std::string kDir = SFT_SCENARIO_DIR;

Scenario table_case(const std::string& set, std::size_t case_no) {
  return load_scenario_set(kDir + "/" + set)[case_no - 1].scenario;
}

int count(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                        std::sregex_iterator()));
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("sft_test_" + std::to_string(::getpid()) + "_" + name);
}

RunOptions no_oracle() {
  RunOptions o;
  o.run_oracle = false;
  return o;
}

const char* kMinimal = R"({"name": "m", "wind": [0, 0], "variant": "sylvester",
  "targets": [{"shape": "disk", "center": [0, 0], "size": 1, "speed": 1}]})";

}  // namespace

TEST(LoadScenario, Info4) {
  const Scenario s = load_scenario(kDir + "/info4.json");
  ASSERT_EQ(s.targets.size(), 3u);
  const Vec2 centers[] = {{30, 350}, {210, 10}, {550, 200}};
  const double speeds[] = {2, 1, 3};
  for (int i = 0; i < 3; ++i) {
    const auto& d = std::get<Disk>(s.targets[i].set);
    EXPECT_EQ(d.center, centers[i]);
    EXPECT_EQ(d.radius, 10.0);
    EXPECT_EQ(s.targets[i].speed, speeds[i]);
  }
  EXPECT_TRUE(std::holds_alternative<WholePlane>(s.constraint));
}

TEST(LoadScenario, WindFasterThanVehicle) {
  std::string text = kMinimal;
  text.replace(text.find("[0, 0]"), 6, "[2, 0]");
  try {
    parse_scenario(text);
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("wind speed exceeds vehicle speed"), std::string::npos);
  }
}

TEST(LoadScenario, EmptyTargets) {
  EXPECT_THROW(parse_scenario(R"({"wind": [0, 0], "variant": "ft", "targets": []})"),
               ScenarioError);
}

TEST(LoadScenario, ParseErrorReportsLine) {
  try {
    parse_scenario("{\n  \"name\": \"x\",\n  \"wind\": [0, 0\n}");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(LoadScenario, FieldDiagnostics) {
  auto message = [](const std::string& text) {
    try {
      parse_scenario(text);
    } catch (const ScenarioError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"variant": "ft", "targets": [{"shape": "disk", "center": [0, 0], "size": 1}]})")
                .find("targets[0]: missing field \"speed\""),
            std::string::npos);
  EXPECT_NE(message(R"({"variant": "nope", "targets": []})").find("unknown value \"nope\""),
            std::string::npos);
  EXPECT_NE(message(R"({"variant": "ft", "targets": [{"shape": "disk", "center": [0], "size": 1, "speed": 1}]})")
                .find("targets[0].center"),
            std::string::npos);
  EXPECT_NE(message(R"({"variant": "ft", "targets": [{"shape": "box", "center": [0, 0], "size": -1, "speed": 1}]})")
                .find("targets[0]"),
            std::string::npos);
}

TEST(LoadScenario, MissingFileIsIoError) {
  EXPECT_THROW(load_scenario(kDir + "/does_not_exist.json"), IoError);
}

TEST(LoadScenario, RoundTripAllBundled) {
  for (int k = 1; k <= 7; ++k) {
    const Scenario s = load_scenario(kDir + "/info" + std::to_string(k) + ".json");
    EXPECT_EQ(parse_scenario(write_scenario(s)), s) << "info" << k;
  }
  Scenario s = table_case("table3.json", 5);
  s.constraint = Box({100, 100}, Vec2{50, 20});
  s.solver.step = 12.5;
  s.solver.iters = 1000;
  s.solver.x0 = Vec2{3, 4};
  EXPECT_EQ(parse_scenario(write_scenario(s)), s);
}

TEST(ScenarioSet, TablesLoad) {
  EXPECT_EQ(load_scenario_set(kDir + "/table1.json").size(), 10u);
  EXPECT_EQ(load_scenario_set(kDir + "/table2.json").size(), 14u);
  const auto t3 = load_scenario_set(kDir + "/table3.json");
  ASSERT_EQ(t3.size(), 24u);
  EXPECT_EQ(t3[23].id, "24");
  EXPECT_EQ(t3[23].scenario.wind, Vec2(0.8, 0));
  EXPECT_EQ(t3[23].scenario.variant, ScenarioVariant::ExtendedSFT);
  EXPECT_EQ(t3[23].scenario.loop, ExtendedLoop::FarthestFirst);
  EXPECT_EQ(t3[23].scenario.witness, WitnessRule::Euclidean);
}

TEST(BuildProblem, TermsPerVariant) {
  Scenario s = load_scenario(kDir + "/info4.json");
  struct Expect {
    ScenarioVariant v;
    std::size_t groups, terms;
  };
  const Expect rows[] = {
      {ScenarioVariant::FT, 1, 6},          {ScenarioVariant::Sylvester, 3, 3},
      {ScenarioVariant::SFT, 3, 6},         {ScenarioVariant::ExtendedSFT, 3, 6},
      {ScenarioVariant::ExtendedFT, 1, 6},  {ScenarioVariant::ExtendedSylvester, 6, 6},
  };
  for (const auto& e : rows) {
    s.variant = e.v;
    const Problem P = build_problem(s);
    EXPECT_EQ(P.groups().size(), e.groups) << to_string(e.v);
    EXPECT_EQ(P.term_count(), e.terms) << to_string(e.v);
  }
  s.variant = ScenarioVariant::ExtendedSFT;
  const Problem pe = build_problem(s);
  const auto& g = pe.groups()[0];
  EXPECT_EQ(g[0].direction(), Direction::ToTarget);
  EXPECT_EQ(g[0].extremum(), Extremum::Nearest);
  EXPECT_EQ(g[1].direction(), Direction::FromTarget);
  EXPECT_EQ(g[1].extremum(), Extremum::Farthest);
  s.loop = ExtendedLoop::FarthestFirst;
  const Problem pf = build_problem(s);
  const auto& h = pf.groups()[0];
  EXPECT_EQ(h[0].direction(), Direction::ToTarget);
  EXPECT_EQ(h[0].extremum(), Extremum::Farthest);
  EXPECT_EQ(h[1].direction(), Direction::FromTarget);
  EXPECT_EQ(h[1].extremum(), Extremum::Nearest);
}

TEST(BuildProblem, NeglectedProblemHasZeroWindSameSpeeds) {
  const Scenario s = load_scenario(kDir + "/info6.json");
  const Problem P = build_problem(s, Vec2{});
  std::size_t i = 0;
  for (const auto& g : P.groups()) {
    for (const auto& t : g) {
      EXPECT_EQ(t.dynamics().wind(), Vec2(0, 0));
      EXPECT_EQ(t.dynamics().speed(), s.targets[i++].speed);
    }
  }
}

TEST(RunCase, NoWindMeansNoImprovement) {
  const CaseReport r = run_case(load_scenario(kDir + "/info4.json"), Vec2{0, 0}, no_oracle());
  EXPECT_EQ(r.Z_N, r.Z_I);
  EXPECT_EQ(r.abs_imp, 0.0);
  EXPECT_EQ(r.rel_imp, 0.0);
}

TEST(RunCase, SylvesterStrongWind) {
  const CaseReport r = run_case(table_case("table2.json", 9), {}, no_oracle());
  EXPECT_NEAR(r.Z_N, 721.0, 0.02 * 721.0);
  EXPECT_NEAR(r.Z_I, 126.0, 0.02 * 126.0);
  EXPECT_NEAR(r.rel_imp, 82.5, 1.0);
  EXPECT_EQ(r.abs_imp, r.Z_N - r.Z_I);
  EXPECT_EQ(r.rel_imp, r.abs_imp / r.Z_N * 100.0);
}

TEST(RunCase, ReportInvariantsAndOracle) {
  const Scenario s = table_case("table3.json", 14);
  RunOptions opt;
  opt.oracle_threads = 1;
  const CaseReport r = run_case(s, {}, opt);
  const Problem inc = build_problem(s);
  EXPECT_EQ(r.Z_N, evaluate(inc, r.x_neglected).objective);
  EXPECT_EQ(r.Z_I, evaluate(inc, r.x_included).objective);
  EXPECT_EQ(r.abs_imp, r.Z_N - r.Z_I);
  EXPECT_NEAR(r.Z_I, r.oracle_value, 0.02 * r.oracle_value);
  // The reference neglected location reproduces the reference score.
  EXPECT_NEAR(evaluate(inc, {333, 220}).objective, 1442.0, 0.005 * 1442.0);
}

TEST(EmitTable, CsvAndMarkdown) {
  std::vector<CaseReport> reps;
  for (const auto& c : load_scenario_set(kDir + "/table1.json")) {
    if (reps.size() == 3) break;
    CaseReport r = run_case(c.scenario, {}, no_oracle());
    r.case_id = c.id;
    reps.push_back(r);
  }
  const fs::path csv = temp_path("t.csv"), md = temp_path("t.md");
  emit_table(reps, TableFormat::Csv, csv);
  emit_table(reps, TableFormat::Markdown, md);
  const std::string a = read_file(csv), b = read_file(md);
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "case_id,xN1,xN2,Z_N,xI1,xI2,Z_I,abs_imp,rel_imp,oracle_value");
  EXPECT_EQ(count(a, "\n"), 4);
  EXPECT_EQ(count(b, "\n"), 5);
  for (const auto& r : reps) {
    const std::string zn = std::to_string(std::lround(r.Z_N));
    EXPECT_NE(a.find("," + zn + ","), std::string::npos);
    EXPECT_NE(b.find("| " + zn + " |"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(csv.string() + ".tmp"));
  fs::remove(csv);
  fs::remove(md);

  const fs::path one = temp_path("one.csv");
  emit_table({reps[0]}, TableFormat::Csv, one);
  EXPECT_EQ(count(read_file(one), "\n"), 2);
  fs::remove(one);

  EXPECT_THROW(emit_table({}, TableFormat::Csv, one), std::invalid_argument);
  try {
    emit_table(reps, TableFormat::Csv, "/nonexistent_dir/x.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir/x.csv"), std::string::npos);
  }
}

TEST(EmitPlot, DiskScenarioElements) {
  const Scenario s = table_case("table2.json", 2);
  const CaseReport r = run_case(s, {}, no_oracle());
  const fs::path out = temp_path("p.svg");
  emit_plot(s, r, out);
  const std::string svg = read_file(out);
  fs::remove(out);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<circle class=\"target\""), 3);
  EXPECT_EQ(count(svg, "class=\"marker\""), 2);
  EXPECT_EQ(count(svg, "class=\"wind-arrow\""), 1);
  EXPECT_GE(count(svg, "class=\"dynamics\""), 1);
}

TEST(EmitPlot, ZeroWindAndBoxes) {
  Scenario s = load_scenario(kDir + "/info1.json");
  s.wind = {0, 0};
  const CaseReport r = run_case(s, {}, no_oracle());
  const std::string svg = render_plot(s, r);
  EXPECT_EQ(count(svg, "class=\"wind-arrow\""), 0);
  EXPECT_EQ(count(svg, "<path class=\"target\" d=\"M[^\"]* L[^\"]* L[^\"]* L[^\"]* Z\""), 3);
}
