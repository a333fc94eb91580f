#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "problem.hpp"

namespace sft {

// Subgradient norms above this indicate a malformed scenario.
inline constexpr double kSubgradientWarnNorm = 1e6;

struct ImprovementWindow {
  int window {2000};
  double min_rel_improve {1e-7};
};

/// Projected subgradient settings. Step k (1-based) is step_c / k.
///
/// With `normalized` the step moves step_c / k meters along -v / |v|, so
/// step_c is a length and the reach of the method does not depend on the
/// time scale of the objective. Without it the update is x - (step_c / k) v.
struct SolverConfig {
  Vec2 x0;
  double step_c {1.0};
  int max_iters {50000};
  bool normalized {true};
  bool record_trace {false};
  std::optional<ImprovementWindow> improvement_window;
};

struct TraceEntry {
  int iter;
  Vec2 x;
  double value;
};

struct SolveResult {
  Vec2 best_x;
  double best_value {std::numeric_limits<double>::infinity()};
  int iterations_run {0};
  std::vector<TraceEntry> trace;
  Vec2 final_x;
  std::vector<std::string> warnings;
};

/// 0.1 times the diagonal of the bounding box of all target centers.
inline double default_step(const Problem& P) {
  double lo1 = INFINITY, lo2 = INFINITY, hi1 = -INFINITY, hi2 = -INFINITY;
  for (const auto& g : P.groups()) {
    for (const auto& t : g) {
      const Vec2 c = center_of(t.target());
      lo1 = std::min(lo1, c.x1);
      hi1 = std::max(hi1, c.x1);
      lo2 = std::min(lo2, c.x2);
      hi2 = std::max(hi2, c.x2);
    }
  }
  const double diam = std::hypot(hi1 - lo1, hi2 - lo2);
  return diam > 0.0 ? 0.1 * diam : 1.0;
}

inline SolverConfig default_config(const Problem& P, Vec2 x0 = {}) {
  SolverConfig cfg;
  cfg.x0 = x0;
  cfg.step_c = default_step(P);
  return cfg;
}

/// Projected subgradient descent x_{k+1} = Proj(x_k - a_k v_k) with
/// best-iterate tracking. Stops early on a zero subgradient (x_k optimal),
/// or when the optional improvement window stalls.
inline SolveResult solve(const Problem& P, const SolverConfig& cfg) {
  if (!(cfg.step_c > 0.0) || cfg.max_iters < 1 || !is_finite(cfg.x0)) {
    throw std::invalid_argument("solve: invalid solver configuration");
  }
  SolveResult res;
  Vec2 x = euclid_project(P.constraint(), cfg.x0);
  std::vector<double> best_history;
  const bool windowed = cfg.improvement_window.has_value();
  bool warned = false;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Evaluation ev = evaluate(P, x);
    res.iterations_run = k;
    if (ev.objective < res.best_value) {
      res.best_value = ev.objective;
      res.best_x = x;
    }
    if (cfg.record_trace) res.trace.push_back({k, x, ev.objective});
    res.final_x = x;

    if (windowed) {
      best_history.push_back(res.best_value);
      const int w = cfg.improvement_window->window;
      if (k > w) {
        const double before = best_history[static_cast<std::size_t>(k - 1 - w)];
        const double gain = (before - res.best_value) / std::max(std::abs(before), 1e-300);
        if (gain < cfg.improvement_window->min_rel_improve) break;
      }
    }

    const Vec2 v = subgradient(P, ev, x);
    if (is_zero(v)) break;
    if (!warned && norm(v) > kSubgradientWarnNorm) {
      res.warnings.push_back("subgradient norm exceeds 1e6 at iteration " + std::to_string(k));
      warned = true;
    }
    if (k == cfg.max_iters) break;
    const double scale = cfg.normalized ? cfg.step_c / (k * norm(v)) : cfg.step_c / k;
    x = euclid_project(P.constraint(), x - v * scale);
  }
  return res;
}

/// Best result over several starting points.
inline SolveResult multistart_solve(const Problem& P, SolverConfig cfg,
                                    const std::vector<Vec2>& starts) {
  if (starts.empty()) throw std::invalid_argument("multistart_solve: no starting points");
  SolveResult best;
  for (const Vec2& s : starts) {
    cfg.x0 = s;
    SolveResult r = solve(P, cfg);
    if (r.best_value < best.best_value) {
      auto warnings = std::move(best.warnings);
      best = std::move(r);
      best.warnings.insert(best.warnings.begin(), warnings.begin(), warnings.end());
    } else {
      best.warnings.insert(best.warnings.end(), r.warnings.begin(), r.warnings.end());
    }
  }
  return best;
}

/// Target centers and their centroid: a reasonable default start set.
inline std::vector<Vec2> default_starts(const Problem& P) {
  std::vector<Vec2> pts;
  Vec2 sum;
  for (const auto& g : P.groups()) {
    for (const auto& t : g) {
      const Vec2 c = center_of(t.target());
      if (std::find(pts.begin(), pts.end(), c) == pts.end()) {
        pts.push_back(c);
        sum += c;
      }
    }
  }
  std::vector<Vec2> starts{sum / static_cast<double>(pts.size())};
  starts.insert(starts.end(), pts.begin(), pts.end());
  return starts;
}

}  // namespace sft
