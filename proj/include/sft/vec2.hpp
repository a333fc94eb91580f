#pragma once

#include <cmath>
#include <ostream>

namespace sft {

// Planar point or velocity. Positions are in meters, velocities in m/s.
struct Vec2 {
  double x1 {0.0};
  double x2 {0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double a, double b) : x1(a), x2(b) {}

  constexpr Vec2& operator+=(const Vec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x1 -= o.x1; x2 -= o.x2; return *this; }
  constexpr Vec2& operator*=(double c) { x1 *= c; x2 *= c; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x1, -a.x2}; }
  friend constexpr Vec2 operator*(Vec2 a, double c) { return a *= c; }
  friend constexpr Vec2 operator*(double c, Vec2 a) { return a *= c; }
  friend constexpr Vec2 operator/(const Vec2& a, double c) { return {a.x1 / c, a.x2 / c}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x1 << ", " << v.x2 << ')';
  }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x1 * b.x2 - a.x2 * b.x1; }

inline double norm(const Vec2& a) { return std::hypot(a.x1, a.x2); }

constexpr double norm_sq(const Vec2& a) { return dot(a, a); }

inline bool is_finite(const Vec2& a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

inline bool is_zero(const Vec2& a) { return a.x1 == 0.0 && a.x2 == 0.0; }

}  // namespace sft
