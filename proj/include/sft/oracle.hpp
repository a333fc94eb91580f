#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "golden.hpp"
#include "problem.hpp"

// Brute-force cross-checks that share no search logic with the projection
// and solver code paths.
namespace sft::oracle {

struct GridSpec {
  Vec2 lo;
  Vec2 hi;
  int coarse_n {400};
  int refine_rounds {3};  // each round zooms x10 around the incumbent
};

struct GridResult {
  double value {std::numeric_limits<double>::infinity()};
  Vec2 argmin;
  std::vector<double> round_values;  // incumbent after each round, coarse first
};

/// Bounding box of every target set, grown by half its size on each side.
inline GridSpec auto_grid(const Problem& P) {
  double lo1 = INFINITY, lo2 = INFINITY, hi1 = -INFINITY, hi2 = -INFINITY;
  for (const auto& g : P.groups()) {
    for (const auto& t : g) {
      std::visit(
          [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            Vec2 ext;
            if constexpr (std::is_same_v<T, Box>) {
              ext = o.half;
            } else {
              ext = {o.radius, o.radius};
            }
            lo1 = std::min(lo1, o.center.x1 - ext.x1);
            hi1 = std::max(hi1, o.center.x1 + ext.x1);
            lo2 = std::min(lo2, o.center.x2 - ext.x2);
            hi2 = std::max(hi2, o.center.x2 + ext.x2);
          },
          t.target());
    }
  }
  const double m1 = 0.5 * (hi1 - lo1), m2 = 0.5 * (hi2 - lo2);
  return {{lo1 - m1, lo2 - m2}, {hi1 + m1, hi2 + m2}};
}

namespace detail {

struct Cell {
  double value;
  Vec2 x;
};

// Minimum over an n x n lattice spanning [lo, hi] (endpoints included);
// ties resolve to the lowest (row, column).
inline Cell lattice_min(const Problem& P, Vec2 lo, Vec2 hi, int n, unsigned threads) {
  const double d1 = (hi.x1 - lo.x1) / (n - 1), d2 = (hi.x2 - lo.x2) / (n - 1);
  std::vector<Cell> rows(static_cast<std::size_t>(n),
                         Cell{std::numeric_limits<double>::infinity(), {}});
  auto work = [&](int first, int stride) {
    for (int i = first; i < n; i += stride) {
      Cell best{std::numeric_limits<double>::infinity(), {}};
      for (int j = 0; j < n; ++j) {
        const Vec2 p = euclid_project(P.constraint(), Vec2{lo.x1 + j * d1, lo.x2 + i * d2});
        const double v = evaluate(P, p).objective;
        if (v < best.value) best = {v, p};
      }
      rows[static_cast<std::size_t>(i)] = best;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<int>(t), threads);
  }
  Cell best = rows.front();
  for (const Cell& c : rows) {
    if (c.value < best.value) best = c;
  }
  return best;
}

}  // namespace detail

/// Global minimum of the objective by lattice search with zoom refinement.
/// Deterministic for a given spec regardless of thread count.
inline GridResult grid_min(const Problem& P, const GridSpec& g, unsigned threads = 0) {
  if (!(g.lo.x1 < g.hi.x1) || !(g.lo.x2 < g.hi.x2) || g.coarse_n < 2 || g.refine_rounds < 0) {
    throw std::invalid_argument("grid_min: invalid grid spec");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  GridResult res;
  Vec2 lo = g.lo, hi = g.hi;
  for (int round = 0; round <= g.refine_rounds; ++round) {
    const detail::Cell c = detail::lattice_min(P, lo, hi, g.coarse_n, threads);
    if (c.value < res.value) {
      res.value = c.value;
      res.argmin = c.x;
    }
    res.round_values.push_back(res.value);
    const Vec2 half = (hi - lo) * 0.05;
    lo = res.argmin - half;
    hi = res.argmin + half;
  }
  return res;
}

enum class Mode { Min, Max };

/// Extremum of gauge_eval(F, x - w) over n uniformly spaced boundary points
/// of Omega, polished by golden-section search in the bracket around the
/// best sample.
inline double sample_boundary_extremum(const DynamicSet& F, const ReferenceSet& omega,
                                       const Vec2& x, Mode mode, int n) {
  if (n < 1024) throw std::invalid_argument("sample_boundary_extremum: need n >= 1024");
  const double sign = mode == Mode::Min ? 1.0 : -1.0;
  auto f = [&](double u) { return sign * gauge_eval(F, x - boundary_point(omega, u)); };
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < n; ++i) {
    const double v = f(static_cast<double>(i) / n);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double du = 1.0 / n;
  const double u0 = best * du;
  const ScalarMin m = golden_section_min(f, u0 - du, u0 + du, 1e-14);
  return sign * std::min(best_val, m.value);
}

}  // namespace sft::oracle
