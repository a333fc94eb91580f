#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "vec2.hpp"

namespace sft {

// Axis-aligned box {p : |p1 - c1| <= h1, |p2 - c2| <= h2}.
struct Box {
  Vec2 center;
  Vec2 half;

  Box(Vec2 c, Vec2 h) : center(c), half(h) {
    if (!is_finite(c) || !is_finite(h) || !(h.x1 > 0.0) || !(h.x2 > 0.0)) {
      throw std::invalid_argument("box: half extents must be positive and finite");
    }
  }
  Box(Vec2 c, double h) : Box(c, Vec2{h, h}) {}

  double perimeter() const { return 4.0 * (half.x1 + half.x2); }

  friend bool operator==(const Box&, const Box&) = default;
};

struct Disk {
  Vec2 center;
  double radius;

  Disk(Vec2 c, double r) : center(c), radius(r) {
    if (!is_finite(c) || !std::isfinite(r) || !(r > 0.0)) {
      throw std::invalid_argument("disk: radius must be positive and finite");
    }
  }

  friend bool operator==(const Disk&, const Disk&) = default;
};

using ReferenceSet = std::variant<Box, Disk>;

struct WholePlane {
  friend bool operator==(const WholePlane&, const WholePlane&) = default;
};

// Feasible region for the facility.
using ConstraintSet = std::variant<WholePlane, Box, Disk>;

inline ConstraintSet as_constraint(const ReferenceSet& s) {
  return std::visit([](const auto& v) -> ConstraintSet { return v; }, s);
}

inline Vec2 center_of(const ReferenceSet& s) {
  return std::visit([](const auto& v) { return v.center; }, s);
}

inline bool is_box(const ReferenceSet& s) { return std::holds_alternative<Box>(s); }

// ---------------------------------------------------------------------------
// Membership and Euclidean projection

inline bool contains(const Box& b, const Vec2& x, double tol = 1e-12) {
  return std::abs(x.x1 - b.center.x1) <= b.half.x1 + tol &&
         std::abs(x.x2 - b.center.x2) <= b.half.x2 + tol;
}

inline bool contains(const Disk& d, const Vec2& x, double tol = 1e-12) {
  return norm(x - d.center) <= d.radius + tol;
}

inline bool contains(const ReferenceSet& s, const Vec2& x, double tol = 1e-12) {
  return std::visit([&](const auto& v) { return contains(v, x, tol); }, s);
}

inline bool contains(const ConstraintSet& s, const Vec2& x, double tol = 1e-12) {
  return std::visit(
      [&](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, WholePlane>) {
          return true;
        } else {
          return contains(v, x, tol);
        }
      },
      s);
}

inline Vec2 euclid_project(const WholePlane&, const Vec2& x) { return x; }

inline Vec2 euclid_project(const Box& b, const Vec2& x) {
  return {std::clamp(x.x1, b.center.x1 - b.half.x1, b.center.x1 + b.half.x1),
          std::clamp(x.x2, b.center.x2 - b.half.x2, b.center.x2 + b.half.x2)};
}

inline Vec2 euclid_project(const Disk& d, const Vec2& x) {
  const Vec2 off = x - d.center;
  const double n = norm(off);
  if (n <= d.radius) return x;
  return d.center + off * (d.radius / n);
}

inline Vec2 euclid_project(const ConstraintSet& s, const Vec2& x) {
  return std::visit([&](const auto& v) { return euclid_project(v, x); }, s);
}

inline Vec2 euclid_project(const ReferenceSet& s, const Vec2& x) {
  return std::visit([&](const auto& v) { return euclid_project(v, x); }, s);
}

// ---------------------------------------------------------------------------
// Vertices and boundary parameterization

/// Corners in the order bottom-left, bottom-right, top-left, top-right.
inline std::array<Vec2, 4> vertices(const Box& b) {
  const Vec2 c = b.center, h = b.half;
  return {Vec2{c.x1 - h.x1, c.x2 - h.x2}, Vec2{c.x1 + h.x1, c.x2 - h.x2},
          Vec2{c.x1 - h.x1, c.x2 + h.x2}, Vec2{c.x1 + h.x1, c.x2 + h.x2}};
}

inline std::vector<Vec2> vertices(const ReferenceSet& s) {
  const Box* b = std::get_if<Box>(&s);
  if (b == nullptr) throw std::domain_error("vertices: a disk has no vertices");
  const auto v = vertices(*b);
  return {v.begin(), v.end()};
}

// Boundary loop traversed counter-clockwise from bottom-left; u in [0, 1)
// is the normalized arclength. Values outside [0, 1) wrap.
inline Vec2 boundary_point(const Box& b, double u) {
  u -= std::floor(u);
  const double w = 2.0 * b.half.x1, h = 2.0 * b.half.x2;
  double s = u * b.perimeter();
  const Vec2 lo{b.center.x1 - b.half.x1, b.center.x2 - b.half.x2};
  if (s <= w) return {lo.x1 + s, lo.x2};
  s -= w;
  if (s <= h) return {lo.x1 + w, lo.x2 + s};
  s -= h;
  if (s <= w) return {lo.x1 + w - s, lo.x2 + h};
  s -= w;
  return {lo.x1, lo.x2 + h - std::min(s, h)};
}

// Angle 2*pi*u measured from the positive first axis.
inline Vec2 boundary_point(const Disk& d, double u) {
  const double th = 2.0 * std::numbers::pi * (u - std::floor(u));
  return d.center + Vec2{std::cos(th), std::sin(th)} * d.radius;
}

inline Vec2 boundary_point(const ReferenceSet& s, double u) {
  return std::visit([&](const auto& v) { return boundary_point(v, u); }, s);
}

inline bool on_boundary(const ReferenceSet& s, const Vec2& x, double tol = 1e-9) {
  return std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          const double g1 = std::abs(x.x1 - v.center.x1) - v.half.x1;
          const double g2 = std::abs(x.x2 - v.center.x2) - v.half.x2;
          return std::abs(std::max(g1, g2)) <= tol;
        } else {
          return std::abs(norm(x - v.center) - v.radius) <= tol;
        }
      },
      s);
}

// ---------------------------------------------------------------------------
// Normal cone N(xbar; Omega) = {v : <v, x - xbar> <= 0 for all x in Omega}

inline bool normal_cone_contains(const Box& b, const Vec2& xbar, const Vec2& v,
                                 double tol = 1e-9) {
  if (!contains(b, xbar, tol)) {
    throw std::domain_error("normal_cone_contains: point lies outside the set");
  }
  auto axis_ok = [tol](double p, double c, double h, double vi) {
    if (vi == 0.0) return true;
    if (vi > 0.0) return p >= c + h - tol;
    return p <= c - h + tol;
  };
  return axis_ok(xbar.x1, b.center.x1, b.half.x1, v.x1) &&
         axis_ok(xbar.x2, b.center.x2, b.half.x2, v.x2);
}

inline bool normal_cone_contains(const Disk& d, const Vec2& xbar, const Vec2& v,
                                 double tol = 1e-9) {
  if (!contains(d, xbar, tol)) {
    throw std::domain_error("normal_cone_contains: point lies outside the set");
  }
  if (is_zero(v)) return true;
  const Vec2 radial = xbar - d.center;
  if (std::abs(norm(radial) - d.radius) > tol) return false;  // interior: cone is {0}
  const double nv = norm(v);
  return std::abs(cross(radial, v)) <= tol * d.radius * nv && dot(radial, v) > 0.0;
}

inline bool normal_cone_contains(const ReferenceSet& s, const Vec2& xbar, const Vec2& v,
                                 double tol = 1e-9) {
  return std::visit([&](const auto& o) { return normal_cone_contains(o, xbar, v, tol); }, s);
}

}  // namespace sft
