#pragma once

#include <cmath>

#include "gauge.hpp"
#include "golden.hpp"
#include "sets.hpp"

namespace sft {

/// Outcome of a generalized nearest/farthest projection.
struct ProjectionResult {
  double value {0.0};  // seconds
  Vec2 witness;        // point of the reference set attaining the extremum
  bool at_boundary {false};
};

namespace detail {

// Smallest positive root of a t^2 - 2 b t + c = 0 with a < 0 and c > 0.
inline double positive_root(double a, double b, double c) {
  const double disc = std::max(b * b - a * c, 0.0);
  return c / (b + std::sqrt(disc));
}

// Larger root of a t^2 - 2 b t + c = 0 with a < 0 (both roots real).
inline double larger_root(double a, double b, double c) {
  const double root = std::sqrt(std::max(b * b - a * c, 0.0));
  if (b > 0.0) return c / (b + root);
  return (b - root) / a;
}

inline Vec2 unit_or_first_axis(const Vec2& v) {
  const double n = norm(v);
  if (n == 0.0) return {1.0, 0.0};
  return v / n;
}

inline ProjectionResult nearest_exterior(const DynamicSet& F, const Box& box, const Vec2& x) {
  const auto v = vertices(box);
  // Counter-clockwise from bottom-left, matching boundary_point.
  const std::array<std::pair<Vec2, Vec2>, 4> edges{
      {{v[0], v[1]}, {v[1], v[3]}, {v[3], v[2]}, {v[2], v[0]}}};
  ProjectionResult best{INFINITY, {}, true};
  for (const auto& [a, b] : edges) {
    const Vec2 dir = b - a;
    auto cost = [&](double lam) { return gauge_eval(F, x - (a + dir * lam)); };
    const ScalarMin m = golden_section_min(cost, 0.0, 1.0);
    if (m.value < best.value) best = {m.value, a + dir * m.arg, true};
  }
  return best;
}

// x - c in tF + R B  <=>  |d - t s| <= t r + R.
inline ProjectionResult nearest_exterior(const DynamicSet& F, const Disk& disk, const Vec2& x) {
  const Vec2 d = x - disk.center, s = F.wind();
  const double r = F.speed(), R = disk.radius;
  const double t = positive_root(norm_sq(s) - r * r, dot(s, d) + R * r, norm_sq(d) - R * R);
  const Vec2 u = unit_or_first_axis(d - s * t);
  return {t, disk.center + u * R, true};
}

}  // namespace detail

/// Set-based gauge rho_F^Omega(x) = min over w in Omega of gauge_eval(F, x - w):
/// the least time to reach x from some point of Omega under dynamics F.
/// Inside Omega the value is 0 and the witness is x itself.
inline ProjectionResult set_gauge(const DynamicSet& F, const ReferenceSet& omega, const Vec2& x) {
  if (contains(omega, x)) return {0.0, x, false};
  return std::visit([&](const auto& o) { return detail::nearest_exterior(F, o, x); }, omega);
}

namespace detail {

inline ProjectionResult farthest(const DynamicSet& F, const Box& box, const Vec2& x) {
  ProjectionResult best{-1.0, {}, true};
  for (const Vec2& w : vertices(box)) {
    const double val = gauge_eval(F, x - w);
    if (val > best.value) best = {val, w, true};
  }
  return best;
}

// x - c - R B inside tF  <=>  |d - t s| + R <= t r.
inline ProjectionResult farthest(const DynamicSet& F, const Disk& disk, const Vec2& x) {
  const Vec2 d = x - disk.center, s = F.wind();
  const double r = F.speed(), R = disk.radius;
  const double t = larger_root(norm_sq(s) - r * r, dot(s, d) - R * r, norm_sq(d) - R * R);
  const Vec2 u = unit_or_first_axis(d - s * t);
  return {t, disk.center - u * R, true};
}

}  // namespace detail

/// Maximal set-based gauge: max over w in Omega of gauge_eval(F, x - w), the
/// time that suffices to reach x from every point of Omega. The witness is a
/// vertex for boxes and a boundary point for disks.
inline ProjectionResult msmg(const DynamicSet& F, const ReferenceSet& omega, const Vec2& x) {
  return std::visit([&](const auto& o) { return detail::farthest(F, o, x); }, omega);
}

/// Membership in the enlargement {x : rho_F^Omega(x) <= r}, which equals Omega + rF.
inline bool r_enlargement_contains(const DynamicSet& F, const ReferenceSet& omega, double r,
                                   const Vec2& x) {
  if (!(r > 0.0)) throw std::invalid_argument("r_enlargement_contains: r must be positive");
  return set_gauge(F, omega, x).value <= r + 1e-9;
}

// ---------------------------------------------------------------------------
// Euclidean-witness variants. The travel time is measured to/from the point
// of Omega that is nearest (farthest) in the Euclidean sense rather than the
// time-optimal one. These upper-bound set_gauge (lower-bound msmg) and are
// used to reproduce results computed under that convention.

inline ProjectionResult euclid_witness_nearest(const DynamicSet& F, const ReferenceSet& omega,
                                               const Vec2& x) {
  if (contains(omega, x)) return {0.0, x, false};
  const Vec2 w = euclid_project(omega, x);
  return {gauge_eval(F, x - w), w, true};
}

inline ProjectionResult euclid_witness_farthest(const DynamicSet& F, const ReferenceSet& omega,
                                                const Vec2& x) {
  const Vec2 w = std::visit(
      [&](const auto& o) -> Vec2 {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Box>) {
          Vec2 best = o.center;
          double dist = -1.0;
          for (const Vec2& v : vertices(o)) {
            if (const double dv = norm(x - v); dv > dist) {
              dist = dv;
              best = v;
            }
          }
          return best;
        } else {
          return o.center - detail::unit_or_first_axis(x - o.center) * o.radius;
        }
      },
      omega);
  return {gauge_eval(F, x - w), w, true};
}

}  // namespace sft
