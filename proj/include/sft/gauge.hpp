#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vec2.hpp"

namespace sft {

// Minimum gap between vehicle speed and wind speed accepted at construction.
inline constexpr double kAdmissibilityMargin = 1e-9;

/// Velocities reachable in one unit of time by a vehicle with nominal speed
/// `speed` flying in a uniform wind `wind`: the disk {f : |f - wind| <= speed}.
///
/// The origin is interior iff |wind| < speed, which is enforced here, so the
/// gauge of every nonzero point is finite and positive.
class DynamicSet {
 public:
  DynamicSet(Vec2 wind, double speed) : wind_(wind), speed_(speed) {
    if (!is_finite(wind) || !std::isfinite(speed)) {
      throw std::invalid_argument("dynamic set: non-finite wind or speed");
    }
    if (!(speed > 0.0)) {
      throw std::invalid_argument("dynamic set: speed must be positive");
    }
    if (speed - norm(wind) < kAdmissibilityMargin) {
      throw std::invalid_argument("wind speed exceeds vehicle speed");
    }
  }

  const Vec2& wind() const { return wind_; }
  double speed() const { return speed_; }

  // Worst-case ground speed, min over the boundary of |f|.
  double min_ground_speed() const { return speed_ - norm(wind_); }

  // Lipschitz modulus of the gauge: |rho(x) - rho(y)| <= |x - y| * this.
  double lipschitz() const { return 1.0 / min_ground_speed(); }

  friend bool operator==(const DynamicSet&, const DynamicSet&) = default;

 private:
  Vec2 wind_;
  double speed_;
};

namespace detail {

// r^2 |x|^2 - (s x x)^2, written out as in the expanded quadratic.
inline double beta(const DynamicSet& F, const Vec2& x) {
  const double s1 = F.wind().x1, s2 = F.wind().x2, r2 = F.speed() * F.speed();
  return x.x1 * x.x1 * (r2 - s2 * s2) + x.x2 * x.x2 * (r2 - s1 * s1) +
         2.0 * s1 * s2 * x.x1 * x.x2;
}

}  // namespace detail

/// Coefficient 1 / (|s|^2 - r^2) of the closed-form gauge. Always negative.
inline double gauge_alpha(const DynamicSet& F) {
  return 1.0 / (norm_sq(F.wind()) - F.speed() * F.speed());
}

/// Discriminant of the gauge quadratic at x. Nonnegative for admissible F.
inline double gauge_beta(const DynamicSet& F, const Vec2& x) { return detail::beta(F, x); }

/// Minkowski gauge: the minimal t >= 0 with x in tF, i.e. the flight time
/// needed to cover displacement x.
inline double gauge_eval(const DynamicSet& F, const Vec2& x) {
  if (is_zero(x)) return 0.0;
  // Positive homogeneity lets us work on x / m, which keeps the squares
  // below from underflowing or overflowing.
  const double m = std::max(std::abs(x.x1), std::abs(x.x2));
  const Vec2 u = x / m;
  const double root = std::sqrt(std::max(detail::beta(F, u), 0.0));
  // Smaller root of t^2(|s|^2 - r^2) - 2 (s.u) t + |u|^2 = 0 in the
  // product-of-roots form; s.u + sqrt(beta) > 0 whenever |s| < r.
  return m * (norm_sq(u) / (dot(F.wind(), u) + root));
}

/// Gradient of gauge_eval at x != 0. Satisfies <grad, x> = rho(x) and
/// support(F, grad) = 1.
inline Vec2 gauge_grad(const DynamicSet& F, const Vec2& x) {
  if (is_zero(x)) {
    throw std::domain_error("gauge_grad: gauge is not differentiable at the origin");
  }
  // The gradient is invariant under positive scaling of x.
  const Vec2 u = x / std::max(std::abs(x.x1), std::abs(x.x2));
  const double s1 = F.wind().x1, s2 = F.wind().x2, r2 = F.speed() * F.speed();
  const double root = std::sqrt(std::max(detail::beta(F, u), 0.0));
  const double a = gauge_alpha(F);
  return {a * (s1 - (u.x1 * (r2 - s2 * s2) + s1 * s2 * u.x2) / root),
          a * (s2 - (u.x2 * (r2 - s1 * s1) + s1 * s2 * u.x1) / root)};
}

/// The reflected set -F. gauge_eval(negate(F), x) == gauge_eval(F, -x).
inline DynamicSet negate(const DynamicSet& F) { return DynamicSet(-F.wind(), F.speed()); }

/// sup over f in F of <v, f>.
inline double support(const DynamicSet& F, const Vec2& v) {
  return dot(v, F.wind()) + F.speed() * norm(v);
}

/// F / lambda, so that gauge_eval(scale_dynamics(F, l), x) == l * gauge_eval(F, x).
inline DynamicSet scale_dynamics(const DynamicSet& F, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("scale_dynamics: lambda must be positive");
  }
  return DynamicSet(F.wind() / lambda, F.speed() / lambda);
}

}  // namespace sft
