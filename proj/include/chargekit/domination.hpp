#pragma once

// Domination of charge families by their aggregates, equivalent subfamilies,
// greedy exhaustion of a family of algebra sets, and atom enumeration.

#include <algorithm>
#include <optional>
#include <vector>

#include "chargekit/charge.hpp"
#include "chargekit/decomposition.hpp"
#include "chargekit/errors.hpp"

namespace chargekit {

struct PivotCheck {
  std::vector<bool> against_lambda;      // μ ≪ λ
  std::vector<bool> against_continuous;  // μ ≪ λ^c
  bool holds() const { return against_lambda == against_continuous; }
};

struct DominationReport {
  Charge dominating;                              // m = aggregate(M)
  std::vector<bool> per_member;                   // μ_i ≪ m
  std::vector<std::size_t> equivalent_subfamily;  // 0-based member indices
  std::optional<PivotCheck> pivot;                // present when λ was supplied

  bool all_dominated() const { return std::all_of(per_member.begin(), per_member.end(), [](bool b) { return b; }); }
};

/// Irredundant index set whose members jointly carry the family's support:
/// a forward pass keeps members that enlarge the running support, then a
/// backward pass drops any member the others already cover.
inline std::vector<std::size_t> equivalent_subfamily(const std::vector<Charge>& members) {
  std::vector<Support> supports;
  for (const auto& m : members) supports.push_back(support(m));
  auto joint = [&](const std::vector<std::size_t>& idx, std::optional<std::size_t> skip = std::nullopt) {
    Support s;
    for (auto i : idx)
      if (i != skip) s |= supports[i];
    return s;
  };

  std::vector<std::size_t> chosen;
  Support running;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!running.covers(supports[i])) {
      chosen.push_back(i);
      running |= supports[i];
    }
  }
  for (std::size_t k = 0; k < chosen.size();) {
    if (joint(chosen, chosen[k]).covers(supports[chosen[k]])) {
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  // The zero family still needs a representative.
  if (chosen.empty() && !members.empty()) chosen.push_back(0);
  return chosen;
}

inline DominationReport dominate(const ChargeFamily& family, const std::optional<Charge>& lambda = std::nullopt) {
  if (family.empty()) throw EmptyFamily("dominate: empty family");
  DominationReport report;
  report.dominating = aggregate(family);
  for (const auto& mu : family.members) report.per_member.push_back(abs_continuous(mu, report.dominating));
  report.equivalent_subfamily = equivalent_subfamily(family.members);
  if (lambda) {
    const Charge continuous = lebesgue_decompose(*lambda, family).continuous_part;
    PivotCheck pivot;
    for (const auto& mu : family.members) {
      pivot.against_lambda.push_back(abs_continuous(mu, *lambda));
      pivot.against_continuous.push_back(abs_continuous(mu, continuous));
    }
    report.pivot = std::move(pivot);
  }
  return report;
}

struct ExhaustionTrace {
  std::vector<CanonicalSet> chosen;       // H_1, H_2, ...
  std::vector<std::size_t> chosen_index;  // input index of each H_n
  Rational initial_residual;              // λ(⋃H)
  std::vector<Rational> residuals;        // r_k = λ(⋃H ∖ ⋃_{n≤k} H_n)

  const Rational& final_residual() const { return residuals.empty() ? initial_residual : residuals.back(); }
};

/// Greedy exhaustion: each step takes the H with the largest uncovered mass
/// (smallest index on ties) and stops once no H adds mass.
inline ExhaustionTrace exhaust(const Charge& lambda, const std::vector<CanonicalSet>& sets) {
  require_positive(lambda, "exhaust");
  if (sets.empty()) throw EmptyFamily("exhaust: empty set family");
  CanonicalSet target;
  for (const auto& h : sets) target = set_union(target, h);

  ExhaustionTrace trace;
  trace.initial_residual = evaluate(lambda, target);
  CanonicalSet covered;
  for (;;) {
    std::optional<std::size_t> best;
    Rational best_gain = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      Rational gain = evaluate(lambda, set_difference(sets[i], covered));
      if (gain > best_gain) {
        best_gain = std::move(gain);
        best = i;
      }
    }
    if (!best) break;
    covered = set_union(covered, sets[*best]);
    trace.chosen.push_back(sets[*best]);
    trace.chosen_index.push_back(*best);
    trace.residuals.push_back(evaluate(lambda, set_difference(target, covered)));
  }
  return trace;
}

/// A ∈ A_H for finite H: λ(A ∖ ⋃H) = 0.
inline bool in_AH(const Charge& lambda, const std::vector<CanonicalSet>& sets, const CanonicalSet& a) {
  require_positive(lambda, "in_AH");
  CanonicalSet cover;
  for (const auto& h : sets) cover = set_union(cover, h);
  return evaluate(lambda, set_difference(a, cover)) == 0;
}

struct Atom {
  PrimitiveKind kind;  // point_mass or left_limit
  Rational location;
  CanonicalSet representative;
};

/// One atom per isolated point-mass or left-limit key. A key is isolated when
/// the density support leaves a one-sided gap at it (right of a point mass,
/// left of a left limit). Representatives are pairwise disjoint.
inline std::vector<Atom> enumerate_atoms(const Charge& lambda) {
  require_positive(lambda, "enumerate_atoms");
  const CanonicalSet dens = lambda.density_support();
  const Rational eps = detail::min_gap(detail::landmarks({&lambda})) / 2;

  std::vector<Atom> atoms;
  for (const auto& kv : lambda.point_masses()) {
    if (!right_neighborhood(dens, kv.first))
      atoms.push_back(Atom{PrimitiveKind::point_mass, kv.first, CanonicalSet::interval(kv.first, kv.first + eps)});
  }
  for (const auto& kv : lambda.left_limits()) {
    if (!left_neighborhood(dens, kv.first))
      atoms.push_back(Atom{PrimitiveKind::left_limit, kv.first, CanonicalSet::interval(kv.first - eps, kv.first)});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return a.representative.intervals().front().lo < b.representative.intervals().front().lo;
  });
  CanonicalSet used;
  for (auto& atom : atoms) {
    atom.representative = set_difference(atom.representative, used);
    used = set_union(used, atom.representative);
  }
  return atoms;
}

}  // namespace chargekit
