#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gauge.hpp"
#include "projection.hpp"
#include "sets.hpp"

namespace sft {

// Whether the vehicle flies from the facility to the target, or back.
enum class Direction { ToTarget, FromTarget };

// Which point of the target the leg touches: the time-nearest or the
// time-farthest one.
enum class Extremum { Nearest, Farthest };

/// How a term picks the point of its target set that the leg starts or ends at.
enum class WitnessRule {
  Generalized,  // exact: time-optimal point (set_gauge / msmg)
  Euclidean,    // Euclidean nearest / farthest point of the target
};

/// One summand of an objective group.
///
/// FromTarget legs run from the target to the facility under `dynamics`;
/// ToTarget legs run the other way, which is the same as the reflected set
/// applied to facility-minus-target. The weight is folded in by scaling.
class Term {
 public:
  Term(DynamicSet dynamics, ReferenceSet target, Direction direction, Extremum extremum,
       double weight = 1.0)
      : dynamics_(dynamics),
        target_(std::move(target)),
        direction_(direction),
        extremum_(extremum),
        weight_(weight),
        resolved_(scale_dynamics(direction == Direction::ToTarget ? negate(dynamics) : dynamics,
                                 weight)) {}

  const DynamicSet& dynamics() const { return dynamics_; }
  const ReferenceSet& target() const { return target_; }
  Direction direction() const { return direction_; }
  Extremum extremum() const { return extremum_; }
  double weight() const { return weight_; }

  // The set whose gauge is evaluated at x - w.
  const DynamicSet& resolved() const { return resolved_; }

 private:
  DynamicSet dynamics_;
  ReferenceSet target_;
  Direction direction_;
  Extremum extremum_;
  double weight_;
  DynamicSet resolved_;
};

enum class Variant { FermatTorricelli, Sylvester, SFT };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::FermatTorricelli: return "fermat-torricelli";
    case Variant::Sylvester: return "sylvester";
    case Variant::SFT: return "sft";
  }
  return "?";
}

using TermGroup = std::vector<Term>;

/// Minimize over x in the constraint set the max over groups of the summed
/// term values.
class Problem {
 public:
  Problem(std::vector<TermGroup> groups, ConstraintSet constraint = WholePlane{},
          std::string label = {}, WitnessRule rule = WitnessRule::Generalized)
      : groups_(std::move(groups)),
        constraint_(std::move(constraint)),
        label_(std::move(label)),
        rule_(rule) {
    if (groups_.empty()) throw std::invalid_argument("problem: no term groups");
    for (const auto& g : groups_) {
      if (g.empty()) throw std::invalid_argument("problem: empty term group");
    }
  }

  const std::vector<TermGroup>& groups() const { return groups_; }
  const ConstraintSet& constraint() const { return constraint_; }
  const std::string& label() const { return label_; }
  WitnessRule witness_rule() const { return rule_; }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& g : groups_) n += g.size();
    return n;
  }

  // Shape-implied variant; a single singleton group counts as Fermat-Torricelli.
  Variant variant() const {
    if (groups_.size() == 1) return Variant::FermatTorricelli;
    for (const auto& g : groups_) {
      if (g.size() != 1) return Variant::SFT;
    }
    return Variant::Sylvester;
  }

 private:
  std::vector<TermGroup> groups_;
  ConstraintSet constraint_;
  std::string label_;
  WitnessRule rule_;
};

/// Fermat-Torricelli shape: everything in one group.
inline Problem make_fermat_torricelli(std::vector<Term> terms, ConstraintSet c = WholePlane{},
                                      std::string label = {},
                                      WitnessRule rule = WitnessRule::Generalized) {
  return Problem({std::move(terms)}, std::move(c), std::move(label), rule);
}

/// Sylvester shape: every term in its own group.
inline Problem make_sylvester(const std::vector<Term>& terms, ConstraintSet c = WholePlane{},
                              std::string label = {},
                              WitnessRule rule = WitnessRule::Generalized) {
  std::vector<TermGroup> groups;
  for (const auto& t : terms) groups.push_back({t});
  return Problem(std::move(groups), std::move(c), std::move(label), rule);
}

struct Evaluation {
  double objective {0.0};
  std::vector<double> group_values;
  std::size_t active_group {0};
  std::vector<std::vector<ProjectionResult>> witnesses;  // [group][term]
};

inline ProjectionResult evaluate_term(const Term& t, const Vec2& x,
                                      WitnessRule rule = WitnessRule::Generalized) {
  const DynamicSet& F = t.resolved();
  if (t.extremum() == Extremum::Nearest) {
    return rule == WitnessRule::Generalized ? set_gauge(F, t.target(), x)
                                            : euclid_witness_nearest(F, t.target(), x);
  }
  return rule == WitnessRule::Generalized ? msmg(F, t.target(), x)
                                          : euclid_witness_farthest(F, t.target(), x);
}

inline Evaluation evaluate(const Problem& P, const Vec2& x) {
  Evaluation ev;
  ev.group_values.reserve(P.groups().size());
  ev.witnesses.reserve(P.groups().size());
  for (const auto& g : P.groups()) {
    double sum = 0.0;
    auto& w = ev.witnesses.emplace_back();
    w.reserve(g.size());
    for (const auto& t : g) {
      w.push_back(evaluate_term(t, x, P.witness_rule()));
      sum += w.back().value;
    }
    ev.group_values.push_back(sum);
  }
  ev.active_group = 0;
  for (std::size_t k = 1; k < ev.group_values.size(); ++k) {
    if (ev.group_values[k] > ev.group_values[ev.active_group]) ev.active_group = k;
  }
  ev.objective = ev.group_values[ev.active_group];
  return ev;
}

/// Subgradient contribution of one term, given its projection at x.
/// A nearest term with x inside its target contributes 0 (the zero vector
/// lies in N(x; Omega) intersected with the unit-support set); every other
/// term contributes the gauge gradient at x - witness.
inline Vec2 term_subgradient(const Term& t, const Vec2& x, const ProjectionResult& pr) {
  const Vec2 disp = x - pr.witness;
  if (is_zero(disp)) return {};
  if (t.extremum() == Extremum::Nearest && !pr.at_boundary) return {};
  return gauge_grad(t.resolved(), disp);
}

inline Vec2 term_subgradient(const Term& t, const Vec2& x,
                             WitnessRule rule = WitnessRule::Generalized) {
  return term_subgradient(t, x, evaluate_term(t, x, rule));
}

/// Subgradient assembled from an existing evaluation at x: sum over the
/// first active group.
inline Vec2 subgradient(const Problem& P, const Evaluation& ev, const Vec2& x) {
  const auto& g = P.groups()[ev.active_group];
  const auto& w = ev.witnesses[ev.active_group];
  Vec2 v;
  for (std::size_t i = 0; i < g.size(); ++i) v += term_subgradient(g[i], x, w[i]);
  return v;
}

inline Vec2 subgradient(const Problem& P, const Vec2& x) {
  return subgradient(P, evaluate(P, x), x);
}

// ---------------------------------------------------------------------------
// Existence / uniqueness diagnostics

struct UniquenessReport {
  bool bounded {false};                  // an optimal solution exists
  bool strictly_convex_targets {false};  // every target is a disk
  std::vector<std::string> notes;

  bool uniqueness_guaranteed() const { return bounded && strictly_convex_targets; }
};

/// Advisory check of the sufficient conditions for existence and uniqueness.
/// Only boundedness and strict convexity are assessed; the line condition
/// is not verified.
inline UniquenessReport check_uniqueness_conditions(const Problem& P) {
  UniquenessReport rep;
  // Every target is compact, so the objective is coercive.
  rep.bounded = true;
  if (!std::holds_alternative<WholePlane>(P.constraint())) {
    rep.notes.push_back("constraint set is compact");
  }
  rep.strictly_convex_targets = true;
  for (const auto& g : P.groups()) {
    for (const auto& t : g) {
      if (is_box(t.target())) rep.strictly_convex_targets = false;
    }
  }
  if (rep.strictly_convex_targets) {
    rep.notes.push_back("strictly convex targets: yes");
  } else {
    rep.notes.push_back("targets not strictly convex; uniqueness not guaranteed");
  }
  rep.notes.push_back(rep.bounded ? "bounded: yes" : "bounded: no");
  return rep;
}

}  // namespace sft
