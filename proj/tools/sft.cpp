// Command-line front end: solve, tabulate, cross-check and plot scenarios.

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sft/sft.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kStrictWarning = 2, kIo = 3 };

sft::Vec2 parse_wind(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw sft::ScenarioError("--wind: expected sx,sy");
  try {
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, comma), &used);
    const double b = std::stod(text.substr(comma + 1));
    return {a, b};
  } catch (const std::exception&) {
    throw sft::ScenarioError("--wind: expected two numbers, got \"" + text + "\"");
  }
}

unsigned case_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SFT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_solve(const std::string& path, const std::string& wind, int iters, double step,
              bool trace, bool strict) {
  sft::Scenario s = sft::load_scenario(path);
  if (!wind.empty()) s.wind = parse_wind(wind);
  const sft::Problem P = sft::build_problem(s);

  sft::SolverConfig cfg = sft::scenario_config(s, P);
  if (iters > 0) cfg.max_iters = iters;
  if (step > 0.0) cfg.step_c = step;
  cfg.record_trace = trace;
  const sft::SolveResult r = sft::multistart_solve(P, cfg, sft::scenario_starts(s, P));

  if (trace) {
    std::cout << "iter,x1,x2,value\n" << std::setprecision(10);
    for (const auto& e : r.trace) {
      std::cout << e.iter << ',' << e.x.x1 << ',' << e.x.x2 << ',' << e.value << '\n';
    }
  }
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "scenario: " << s.name << " (" << sft::to_string(s.variant) << ", wind "
            << s.wind << ")\n";
  std::cout << "best x: " << r.best_x << "\n";
  std::cout << "best value: " << r.best_value << " s\n";
  std::cout << "iterations: " << r.iterations_run << " (last start)\n";
  const auto report = sft::check_uniqueness_conditions(P);
  for (const auto& n : report.notes) std::cout << "diagnostic: " << n << '\n';
  print_warnings(r.warnings);
  return strict && !r.warnings.empty() ? kStrictWarning : kOk;
}

int cmd_oracle(const std::string& path, const std::string& wind) {
  sft::Scenario s = sft::load_scenario(path);
  if (!wind.empty()) s.wind = parse_wind(wind);
  const sft::Problem P = sft::build_problem(s);
  const auto g = sft::oracle::grid_min(P, sft::oracle::auto_grid(P));
  const auto r =
      sft::multistart_solve(P, sft::scenario_config(s, P), sft::scenario_starts(s, P));
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "grid min: " << g.value << " s at " << g.argmin << '\n';
  std::cout << "solver:   " << r.best_value << " s at " << r.best_x << '\n';
  std::cout << "relative gap: " << std::setprecision(6)
            << (r.best_value - g.value) / g.value << '\n';
  return kOk;
}

int cmd_table(const std::string& path, const std::string& out, const std::string& format) {
  const auto cases = sft::load_scenario_set(path);
  std::vector<sft::CaseReport> reports(cases.size());
  std::atomic<std::size_t> next {0};
  sft::RunOptions opt;
  opt.oracle_threads = 1;
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(case_threads(), static_cast<unsigned>(cases.size()));
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
          reports[i] = sft::run_case(cases[i].scenario, {}, opt);
          reports[i].case_id = cases[i].id;
        }
      });
    }
  }
  for (const auto& r : reports) print_warnings(r.warnings);
  const auto fmt = format == "markdown" ? sft::TableFormat::Markdown : sft::TableFormat::Csv;
  sft::emit_table(reports, fmt, out);
  std::cout << "wrote " << reports.size() << " rows to " << out << '\n';
  return kOk;
}

int cmd_plot(const std::string& path, const std::string& wind, const std::string& out) {
  sft::Scenario s = sft::load_scenario(path);
  if (!wind.empty()) s.wind = parse_wind(wind);
  sft::RunOptions opt;
  opt.run_oracle = false;
  const auto r = sft::run_case(s, {}, opt);
  sft::emit_plot(s, r, out);
  std::cout << "wrote " << out << '\n';
  return kOk;
}

int cmd_check() {
  int failed = 0;
  for (const auto& c : sft::selfcheck::run_all()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.module << ": " << c.name << " ("
              << c.trials << " trials, worst " << std::scientific << std::setprecision(2)
              << c.worst << std::defaultfloat << ")";
    if (!c.passed && !c.detail.empty()) std::cout << " at " << c.detail;
    std::cout << '\n';
    failed += !c.passed;
  }
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
            << '\n';
  return failed == 0 ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-facility siting under wind: SFT, Sylvester and Fermat-Torricelli variants"};
  app.require_subcommand(1);

  std::string scenario, wind, out, format = "csv";
  int iters = 0;
  double step = 0.0;
  bool trace = false, strict = false;

  auto* solve = app.add_subcommand("solve", "Solve a scenario with its wind");
  solve->add_option("scenario", scenario, "Scenario file")->required();
  solve->add_option("--wind", wind, "Wind override as sx,sy");
  solve->add_option("--iters", iters, "Iteration cap")->check(CLI::PositiveNumber);
  solve->add_option("--step", step, "Step constant c in c/k")->check(CLI::PositiveNumber);
  solve->add_flag("--trace", trace, "Print every iterate as CSV");
  solve->add_flag("--strict", strict, "Exit 2 on solver warnings");

  auto* table = app.add_subcommand("table", "Run a scenario set and write the comparison table");
  table->add_option("set", scenario, "Scenario-set file")->required();
  table->add_option("--out", out, "Output file")->required();
  table->add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));

  auto* orc = app.add_subcommand("oracle", "Compare the solver against a refined grid search");
  orc->add_option("scenario", scenario, "Scenario file")->required();
  orc->add_option("--wind", wind, "Wind override as sx,sy");

  auto* plot = app.add_subcommand("plot", "Draw targets, wind and both optima as SVG");
  plot->add_option("scenario", scenario, "Scenario file")->required();
  plot->add_option("--wind", wind, "Wind override as sx,sy");
  plot->add_option("--out", out, "Output SVG file")->required();

  auto* check = app.add_subcommand("check", "Run the randomized invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    if (*solve) return cmd_solve(scenario, wind, iters, step, trace, strict);
    if (*table) return cmd_table(scenario, out, format);
    if (*orc) return cmd_oracle(scenario, wind);
    if (*plot) return cmd_plot(scenario, wind, out);
    if (*check) return cmd_check();
  } catch (const sft::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const sft::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
