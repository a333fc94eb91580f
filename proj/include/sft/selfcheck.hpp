#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "problem.hpp"
#include "solver.hpp"

// Randomized invariant suites for the gauge, projection, objective and
// solver layers. Each check reports the worst violation it saw so a failure
// is diagnosable from the one-line summary.
namespace sft::selfcheck {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed {true};
  int trials {0};
  double worst {0.0};  // largest observed violation (0 if none)
  std::string detail;
};

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<>(lo, hi)(rng_); }

  Vec2 point(double span) { return {uniform(-span, span), uniform(-span, span)}; }

  // Admissible disk dynamics with |wind| at most 90% of the speed.
  DynamicSet dynamics() {
    const double r = uniform(0.5, 3.0);
    const double w = uniform(0.0, 0.9) * r;
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return DynamicSet({w * std::cos(th), w * std::sin(th)}, r);
  }

  ReferenceSet target(double span = 100.0) {
    const Vec2 c = point(span);
    if (integer(0, 1) == 0) return Box(c, Vec2{uniform(1.0, 20.0), uniform(1.0, 20.0)});
    return Disk(c, uniform(1.0, 20.0));
  }

  // Point at least `gap` outside omega.
  Vec2 exterior_point(const ReferenceSet& omega, double span, double gap = 1e-3) {
    for (;;) {
      const Vec2 x = point(span);
      if (norm(x - euclid_project(omega, x)) > gap) return x;
    }
  }

  // A problem of random shape: 1-4 targets under a common wind, a random
  // mix of directions and extrema, grouped as one of the standard variants.
  Problem problem() {
    const int n = integer(1, 4);
    const double r = uniform(0.5, 3.0);
    const double w = uniform(0.0, 0.9) * r;
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    const Vec2 wind{w * std::cos(th), w * std::sin(th)};
    const int shape = integer(0, 2);
    std::vector<TermGroup> groups;
    TermGroup all;
    for (int i = 0; i < n; ++i) {
      const DynamicSet F(wind, r * uniform(1.0, 1.5));
      const ReferenceSet o = target();
      TermGroup g;
      const int k = integer(1, 2);
      for (int j = 0; j < k; ++j) {
        g.emplace_back(F, o, integer(0, 1) ? Direction::ToTarget : Direction::FromTarget,
                       integer(0, 2) ? Extremum::Nearest : Extremum::Farthest,
                       uniform(0.5, 2.0));
      }
      if (shape == 0) {
        all.insert(all.end(), g.begin(), g.end());
      } else if (shape == 1) {
        for (const auto& t : g) groups.push_back({t});
      } else {
        groups.push_back(std::move(g));
      }
    }
    if (!all.empty()) groups.push_back(std::move(all));
    return Problem(std::move(groups));
  }

 private:
  std::mt19937_64 rng_;
};

class Tracker {
 public:
  Tracker(std::string module, std::string name, double tol)
      : res_{std::move(module), std::move(name), true, 0, 0.0, {}}, tol_(tol) {}

  // Records a violation amount; anything above the tolerance fails.
  void violation(double amount, const std::string& where = {}) {
    ++res_.trials;
    if (!(amount <= tol_)) {
      if (res_.passed || amount > res_.worst) res_.detail = where;
      res_.passed = false;
    }
    if (amount > res_.worst || std::isnan(amount)) res_.worst = amount;
  }

  void require(bool ok, const std::string& where = {}) { violation(ok ? 0.0 : INFINITY, where); }

  CheckResult done() const { return res_; }

 private:
  CheckResult res_;
  double tol_;
};

inline std::string describe(const Vec2& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> gauge_suite(std::uint64_t seed = 1) {
  detail::Sampler S(seed);
  using detail::Tracker;
  Tracker homog("gauge", "positive homogeneity", 1e-10);
  Tracker subadd("gauge", "subadditivity", 1e-10);
  Tracker midpoint("gauge", "midpoint convexity", 1e-10);
  Tracker boundary("gauge", "boundary membership", 1e-9);
  Tracker euler("gauge", "Euler relation", 1e-9);
  Tracker unit("gauge", "unit support of gradient", 1e-9);
  Tracker lip("gauge", "Lipschitz bound", 1e-10);
  Tracker neg("gauge", "negation identity", 1e-12);
  Tracker scale("gauge", "scaling law", 1e-12);
  Tracker fd("gauge", "gradient vs finite differences", 1e-5);

  for (int i = 0; i < 1000; ++i) {
    const DynamicSet F = S.dynamics();
    const Vec2 x = S.point(50.0), y = S.point(50.0);
    const double c = S.uniform(0.0, 10.0);
    const double gx = gauge_eval(F, x), gy = gauge_eval(F, y);

    homog.violation(detail::rel_diff(gauge_eval(F, x * c), c * gx) * (c > 0.0));
    subadd.violation(gauge_eval(F, x + y) - gx - gy);
    midpoint.violation(gauge_eval(F, (x + y) * 0.5) - 0.5 * (gx + gy));
    boundary.violation(std::abs(norm(x / gx - F.wind()) - F.speed()));
    lip.violation(std::abs(gx - gy) - norm(x - y) * F.lipschitz());
    // Relative: the identity holds to rounding of values up to ~100 s.
    neg.violation(std::abs(gauge_eval(negate(F), -x) - gx) / std::max(1.0, gx));
    const double lam = S.uniform(0.1, 10.0);
    scale.violation(std::abs(gauge_eval(scale_dynamics(F, lam), x) - lam * gx) /
                    std::max(1.0, lam * gx));

    const Vec2 g = gauge_grad(F, x);
    euler.violation(std::abs(dot(g, x) - gx) / std::max(1.0, gx));
    unit.violation(std::abs(support(F, g) - 1.0));

    // Central differences need |x| well away from the kink at the origin.
    const Vec2 p = norm(x) < 1.0 ? x + Vec2{2.0, 2.0} : x;
    const double h = 1e-6;
    const Vec2 gp = gauge_grad(F, p);
    const Vec2 num{(gauge_eval(F, p + Vec2{h, 0}) - gauge_eval(F, p - Vec2{h, 0})) / (2 * h),
                   (gauge_eval(F, p + Vec2{0, h}) - gauge_eval(F, p - Vec2{0, h})) / (2 * h)};
    fd.violation(std::max(std::abs(num.x1 - gp.x1), std::abs(num.x2 - gp.x2)),
                 "x = " + detail::describe(p));
  }
  return {homog.done(), subadd.done(), midpoint.done(), boundary.done(), euler.done(),
          unit.done(),  lip.done(),    neg.done(),      scale.done(),    fd.done()};
}

inline std::vector<CheckResult> projection_suite(std::uint64_t seed = 2) {
  detail::Sampler S(seed);
  using detail::Tracker;
  Tracker near_oracle("projection", "nearest matches boundary sampling", 1e-6);
  Tracker far_oracle("projection", "farthest matches boundary sampling", 1e-6);
  Tracker translate("projection", "translation consistency", 1e-9);
  Tracker scaling("projection", "scaling law", 1e-9);
  Tracker lip("projection", "Lipschitz bound", 1e-9);
  Tracker flip("projection", "direction flip", 1e-6);
  Tracker witness("projection", "witness admissibility", 1e-7);
  Tracker sandwich("projection", "nearest strictly below farthest", 0.0);

  for (int i = 0; i < 200; ++i) {
    const DynamicSet F = S.dynamics();
    const ReferenceSet o = S.target();
    const Vec2 x = S.exterior_point(o, 150.0);
    const std::string where = "x = " + detail::describe(x);

    const ProjectionResult pn = set_gauge(F, o, x);
    const ProjectionResult pf = msmg(F, o, x);
    near_oracle.violation(
        detail::rel_diff(pn.value, oracle::sample_boundary_extremum(F, o, x, oracle::Mode::Min,
                                                                    4096)),
        where);
    far_oracle.violation(
        detail::rel_diff(pf.value, oracle::sample_boundary_extremum(F, o, x, oracle::Mode::Max,
                                                                    4096)),
        where);

    const Vec2 d = S.point(500.0);
    const ReferenceSet moved = std::visit(
        [&](auto v) -> ReferenceSet {
          v.center += d;
          return v;
        },
        o);
    translate.violation(std::abs(set_gauge(F, moved, x + d).value - pn.value) /
                        std::max(1.0, pn.value));

    const double lam = S.uniform(0.2, 5.0);
    scaling.violation(std::abs(set_gauge(scale_dynamics(F, lam), o, x).value - lam * pn.value) /
                      std::max(1.0, lam * pn.value));

    const Vec2 y = S.point(150.0);
    lip.violation(std::abs(set_gauge(F, o, y).value - pn.value) - norm(x - y) * F.lipschitz());

    // Time to fly from x into Omega under F is the nearest gauge of -F.
    flip.violation(
        detail::rel_diff(set_gauge(negate(F), o, x).value,
                         oracle::sample_boundary_extremum(negate(F), o, x, oracle::Mode::Min,
                                                          4096)),
        where);

    witness.violation(contains(o, pn.witness, 1e-7) ? 0.0 : INFINITY, where);
    witness.violation(contains(o, pf.witness, 1e-7) ? 0.0 : INFINITY, where);
    witness.violation(pn.at_boundary ? 0.0 : INFINITY, where);
    witness.violation(std::abs(gauge_eval(F, x - pn.witness) - pn.value) /
                      std::max(1.0, pn.value));
    witness.violation(std::abs(gauge_eval(F, x - pf.witness) - pf.value) /
                      std::max(1.0, pf.value));
    sandwich.violation(pn.value < pf.value ? 0.0 : 1.0, where);
  }
  return {near_oracle.done(), far_oracle.done(), translate.done(), scaling.done(),
          lip.done(),         flip.done(),       witness.done(),   sandwich.done()};
}

inline std::vector<CheckResult> problem_suite(std::uint64_t seed = 3) {
  detail::Sampler S(seed);
  using detail::Tracker;
  Tracker ineq("problem", "subgradient inequality", 1e-7);
  Tracker convex("problem", "midpoint convexity", 1e-7);
  Tracker active("problem", "active group attains the max", 0.0);
  Tracker unit("problem", "exterior unit support", 1e-6);
  Tracker weighted("problem", "weight equals scaled dynamics", 1e-10);
  Tracker collapse("problem", "variant collapse", 1e-12);

  for (int i = 0; i < 500; ++i) {
    const Problem P = S.problem();
    const Vec2 xb = S.point(150.0), x = S.point(150.0);
    const Evaluation eb = evaluate(P, xb);
    const double fx = evaluate(P, x).objective;
    const Vec2 v = subgradient(P, eb, xb);
    ineq.violation(eb.objective + dot(v, x - xb) - fx, "xbar = " + detail::describe(xb));
    convex.violation(evaluate(P, (x + xb) * 0.5).objective - 0.5 * (fx + eb.objective));

    double mx = eb.group_values.front();
    for (double g : eb.group_values) mx = std::max(mx, g);
    active.violation(mx - eb.group_values[eb.active_group]);
    for (std::size_t k = 0; k < eb.active_group; ++k) {
      active.violation(eb.group_values[k] < eb.objective ? 0.0 : 1.0);
    }

    for (std::size_t k = 0; k < P.groups().size(); ++k) {
      for (std::size_t j = 0; j < P.groups()[k].size(); ++j) {
        const Term& t = P.groups()[k][j];
        const ProjectionResult& pr = eb.witnesses[k][j];
        if (t.extremum() != Extremum::Nearest || !pr.at_boundary) continue;
        const Vec2 vi = term_subgradient(t, xb, pr);
        unit.violation(std::abs(support(t.resolved(), vi) - 1.0));
      }
    }

    const Term& t0 = P.groups().front().front();
    const Term plain(scale_dynamics(t0.dynamics(), t0.weight()), t0.target(), t0.direction(),
                     t0.extremum());
    weighted.violation(std::abs(evaluate_term(t0, x).value - evaluate_term(plain, x).value) /
                       std::max(1.0, evaluate_term(t0, x).value));

    std::vector<Term> flat;
    std::vector<TermGroup> singletons;
    for (const auto& g : P.groups()) {
      for (const auto& t : g) {
        flat.push_back(t);
        singletons.push_back({t});
      }
    }
    collapse.violation(std::abs(evaluate(Problem(singletons), x).objective -
                                evaluate(make_sylvester(flat), x).objective));
    collapse.violation(std::abs(evaluate(Problem({flat}), x).objective -
                                evaluate(make_fermat_torricelli(flat), x).objective));
  }
  return {ineq.done(), convex.done(), active.done(), unit.done(), weighted.done(),
          collapse.done()};
}

inline std::vector<CheckResult> solver_suite(std::uint64_t seed = 4) {
  detail::Sampler S(seed);
  using detail::Tracker;
  Tracker mono("solver", "best value nonincreasing", 0.0);
  Tracker feasible("solver", "iterates feasible", 1e-9);
  Tracker best("solver", "best value matches trace minimum", 0.0);
  Tracker valid("solver", "subgradient inequality at best point", 1e-7);

  for (int i = 0; i < 20; ++i) {
    const Problem base = S.problem();
    ConstraintSet c = WholePlane{};
    if (i % 3 == 1) c = Box(S.point(50.0), Vec2{S.uniform(5, 40), S.uniform(5, 40)});
    if (i % 3 == 2) c = Disk(S.point(50.0), S.uniform(5, 40));
    const Problem P(base.groups(), c);
    SolverConfig cfg = default_config(P, S.point(200.0));
    cfg.max_iters = 2000;
    cfg.record_trace = true;
    const SolveResult r = solve(P, cfg);

    double running = INFINITY, prev = INFINITY, lowest = INFINITY;
    for (const auto& e : r.trace) {
      running = std::min(running, e.value);
      mono.violation(running - prev > 0.0 ? running - prev : 0.0);
      prev = running;
      lowest = std::min(lowest, e.value);
      feasible.violation(norm(e.x - euclid_project(P.constraint(), e.x)));
    }
    best.violation(std::abs(lowest - r.best_value));

    const Evaluation eb = evaluate(P, r.best_x);
    const Vec2 v = subgradient(P, eb, r.best_x);
    for (int j = 0; j < 100; ++j) {
      const Vec2 y = r.best_x + S.point(100.0);
      valid.violation(eb.objective + dot(v, y - r.best_x) - evaluate(P, y).objective);
    }
  }
  return {mono.done(), feasible.done(), best.done(), valid.done()};
}

/// All suites in module order.
inline std::vector<CheckResult> run_all(std::uint64_t seed = 0) {
  std::vector<CheckResult> out;
  for (auto suite : {gauge_suite, projection_suite, problem_suite, solver_suite}) {
    auto part = suite(++seed);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace sft::selfcheck
