#pragma once

// Built-in regression checks: hand-worked examples with known exact answers,
// one named check each.

#include <functional>
#include <string>
#include <vector>

#include "chargekit/algebra.hpp"
#include "chargekit/charge.hpp"
#include "chargekit/completion.hpp"
#include "chargekit/decomposition.hpp"
#include "chargekit/domination.hpp"
#include "chargekit/ratlp.hpp"
#include "chargekit/text_format.hpp"
#include "chargekit/yan.hpp"

namespace chargekit {

struct SelfCheck {
  std::string name;
  std::function<bool()> run;
};

namespace detail::fixtures {

inline Rational q(const char* text) { return *parse_rational(text); }
inline Charge pt(const char* x, const char* w = "1") { return Charge::point_mass(q(x), q(w)); }
inline Charge dens(const char* a, const char* b, const char* w = "1") { return Charge::density(q(a), q(b), q(w)); }
inline Charge lim(const char* c, const char* w = "1") { return Charge::left_limit(q(c), q(w)); }
inline CanonicalSet iv(const char* a, const char* b) { return CanonicalSet::interval(q(a), q(b)); }

inline yan::YanModel two_point(yan::Mode mode, std::vector<std::vector<Rational>> gens) {
  return yan::YanModel{2, {q("1/2"), q("1/2")}, std::move(gens), mode};
}

// Failing sequence for λ = Density[0,1) + η⁻_1: the harmonic pieces
// [1 - 1/n, 1 - 1/(n+1)) cover [0,1) but never capture the left limit at 1.
inline SetSequence harmonic_sequence() { return SetSequence{{}, HarmonicTail{Rational(1), Rational(1), 1}}; }

inline std::vector<ExtendedSet> completion_tests() {
  return {ExtendedSet::whole(),
          ExtendedSet::from_parts({ExtendedPart{q("0"), q("1/2"), true, true}}),
          ExtendedSet::from_parts({ExtendedPart::point(q("1/2"))}),
          ExtendedSet::from_parts({ExtendedPart{q("1/4"), q("3/4"), false, false}}),
          ExtendedSet::from_parts({ExtendedPart{q("1/2"), q("1"), true, false}})};
}

}  // namespace detail::fixtures

inline std::vector<SelfCheck> selftest_checks() {
  using namespace detail::fixtures;
  std::vector<SelfCheck> checks;
  auto add = [&](std::string name, std::function<bool()> f) { checks.push_back(SelfCheck{std::move(name), std::move(f)}); };

  add("linear_combine refines overlapping densities", [] {
    const std::vector<Rational> coeffs{1, 1};
    const std::vector<Charge> parts{dens("0", "1/2"), dens("1/4", "3/4")};
    return linear_combine(coeffs, parts) == dens("0", "1/4") + dens("1/4", "1/2", "2") + dens("1/2", "3/4");
  });
  add("total_variation of point minus left limit", [] {
    const auto tv = total_variation(pt("1/3") - lim("2/3", "2"));
    return tv.charge == pt("1/3") + lim("2/3", "2") && tv.norm == 3;
  });
  add("meet of point mass and density is zero", [] { return meet(pt("1/2"), dens("0", "1")).is_zero(); });
  add("meet of overlapping densities", [] { return meet(dens("0", "1/2", "2"), dens("1/4", "3/4")) == dens("1/4", "1/2"); });
  add("left limit is not continuous w.r.t. density", [] {
    const auto w = continuity_witness(lim("1/2"), dens("0", "1"));
    return !abs_continuous(lim("1/2"), dens("0", "1")) && w && evaluate(lim("1/2"), w->at(8)) == 1;
  });
  add("point mass singular to density, split at the point", [] {
    const Rational eps = q("1/100");
    const auto b = splitting_set(pt("1/4"), dens("0", "1"), eps);
    return singular(pt("1/4"), dens("0", "1")) && b && b->intervals().front().lo == q("1/4") &&
           evaluate(pt("1/4"), complement(*b)) + evaluate(dens("0", "1"), *b) < eps;
  });
  add("left limit at 1 singular to point mass", [] {
    const Rational eps = q("1/100");
    const auto b = splitting_set(lim("1"), pt("1/2"), eps);
    return singular(lim("1"), pt("1/2")) && b && b->intervals().back().hi == 1 && evaluate(lim("1"), *b) == 1 &&
           evaluate(pt("1/2"), *b) == 0;
  });
  add("integral of simple function against left limit", [] {
    const auto f = SimpleFunction::indicator(iv("1/4", "1/2"), q("5"), q("7"));
    return integrate_simple(lim("1/2"), f) == 5;
  });
  add("density transform of Lebesgue", [] {
    const auto f = SimpleFunction::indicator(iv("0", "1/2"), q("2"), q("4"));
    return density_transform(dens("0", "1"), f) == dens("0", "1/2", "2") + dens("1/2", "1", "4");
  });
  add("aggregate with explicit weights", [] {
    const ChargeFamily m{{pt("1/2", "3"), dens("0", "1")}, std::vector<Rational>{q("1/2"), q("1/2")}};
    return aggregate(m) == pt("1/2", "1/2") + dens("0", "1", "1/2");
  });
  add("aggregate with default weights", [] {
    const ChargeFamily m{{pt("1/4"), pt("1/4") + dens("0", "1")}, std::nullopt};
    return aggregate(m) == pt("1/4", "3/4") + dens("0", "1", "1/4");
  });
  add("membership in L(M) by support coverage", [] {
    return in_L(dens("1/4", "1/2"), ChargeFamily{{dens("0", "1/2"), pt("3/4")}, std::nullopt});
  });
  add("decomposition splits off point mass and left limit", [] {
    const auto d = lebesgue_decompose(dens("0", "1") + pt("1/2") + lim("1"), ChargeFamily{{dens("0", "1")}, std::nullopt});
    return d.continuous_part == dens("0", "1") && d.singular_part == pt("1/2") + lim("1");
  });
  add("decomposition by interval coverage", [] {
    const auto d = lebesgue_decompose(dens("0", "3/4", "2"), ChargeFamily{{dens("1/2", "1")}, std::nullopt});
    return d.continuous_part == dens("1/2", "3/4", "2") && d.singular_part == dens("0", "1/2", "2");
  });
  add("domination with redundant member", [] {
    const auto r = dominate(ChargeFamily{{pt("1/4"), pt("1/4") + dens("0", "1")}, std::nullopt});
    return r.dominating == pt("1/4", "3/4") + dens("0", "1", "1/4") && r.all_dominated() &&
           r.equivalent_subfamily == std::vector<std::size_t>{1};
  });
  add("domination pivot with complementary densities", [] {
    const ChargeFamily m{{dens("0", "1/2"), dens("1/2", "1")}, std::nullopt};
    const auto r = dominate(m, dens("0", "1"));
    return r.all_dominated() && r.pivot && r.pivot->holds() &&
           lebesgue_decompose(dens("0", "1"), m).continuous_part == dens("0", "1");
  });
  add("greedy exhaustion on Lebesgue", [] {
    const auto t = exhaust(dens("0", "1"), {iv("0", "1/2"), iv("0", "3/4"), iv("1/2", "1")});
    return t.chosen == std::vector<CanonicalSet>{iv("0", "3/4"), iv("1/2", "1")} &&
           t.residuals == std::vector<Rational>{q("1/4"), q("0")};
  });
  add("greedy exhaustion prefers the point mass", [] {
    const auto t = exhaust(pt("1/2") + dens("0", "1"), {iv("1/2", "1"), iv("0", "1/2")});
    return t.chosen_index == std::vector<std::size_t>{0, 1} && t.residuals == std::vector<Rational>{q("1/2"), q("0")};
  });
  add("A_H membership under Lebesgue", [] { return !in_AH(dens("0", "1"), {iv("0", "1/2")}, iv("0", "3/4")); });
  add("A_H membership under a point mass", [] {
    return !in_AH(pt("1/4"), {iv("0", "1/8")}, iv("0", "1/2")) && in_AH(pt("1/4"), {iv("1/8", "3/8")}, iv("0", "1/2"));
  });
  add("atoms at isolated point masses", [] {
    const auto atoms = enumerate_atoms(pt("1/4") + pt("3/4") + dens("1/2", "5/8"));
    return atoms.size() == 2 && atoms[0].location == q("1/4") && is_subset(atoms[0].representative, iv("1/4", "1/2")) &&
           atoms[1].location == q("3/4") && is_subset(atoms[1].representative, iv("3/4", "1"));
  });
  add("no atom at a point mass with abutting density", [] { return enumerate_atoms(pt("1/2") + dens("1/2", "1")).empty(); });
  add("singleton under Lebesgue is a null member", [] {
    const auto s = completion_status(dens("0", "1"), ExtendedSet::from_parts({ExtendedPart::point(q("1/2"))}));
    return s.inner == 0 && s.outer == 0 && s.member();
  });
  add("singleton under its point mass is not a member", [] {
    const auto s = completion_status(pt("1/2"), ExtendedSet::from_parts({ExtendedPart::point(q("1/2"))}));
    return s.inner == 0 && s.outer == 1 && !s.member();
  });
  add("closed interval under Lebesgue", [] {
    const auto s = completion_status(dens("0", "1"), ExtendedSet::from_parts({ExtendedPart{q("1/4"), q("1/2"), true, true}}));
    return s.inner == q("1/4") && s.outer == q("1/4") && s.member();
  });
  add("completion sequence captures the left limit first", [] {
    const Charge lambda = dens("0", "1") + lim("1");
    const auto seq = completion_sequence(lambda);
    Rational total = 0;
    for (const auto& a : seq) total += evaluate(lambda, a);
    const Rational eps = CompletionParameters{}.capture;
    return !seq.empty() && seq.front() == CanonicalSet::interval(1 - eps, 1) && total == 2;
  });
  add("completion sequence for a lone point mass", [] {
    const auto seq = completion_sequence(pt("1/2"));
    Rational total = 0;
    for (const auto& a : seq) total += evaluate(pt("1/2"), a);
    const Rational eps = CompletionParameters{}.capture;
    return !seq.empty() && seq.front() == CanonicalSet::interval(q("1/2"), q("1/2") + eps) && total == 1;
  });
  add("harmonic sequence loses the left-limit mass", [] {
    const auto d = verify_sigma_additivity(dens("0", "1") + lim("1"), harmonic_sequence(), {ExtendedSet::whole()});
    return d.size() == 1 && d[0].measure == 2 && d[0].series == 1 && d[0].defect == 1;
  });
  add("constructed sequence is sigma-additive on the tests", [] {
    const Charge lambda = dens("0", "1") + lim("1");
    return all_zero(verify_sigma_additivity(lambda, completion_sequence(lambda), completion_tests()));
  });
  add("unbounded program returns ray (1,1)", [] {
    lp::LinearProgram p{{1, 1}, {lp::Constraint{{1, -1}, lp::Relation::less_equal, 0}}, {}};
    const auto o = lp::solve_lp(p);
    return o.status == lp::Status::unbounded && o.ray.size() == 2 && o.ray[0] > 0 && o.ray[0] == o.ray[1] &&
           lp::check_certificate(p, o);
  });
  add("Farkas certificate rejected after negating the right-hand side", [] {
    lp::LinearProgram p{{1}, {lp::Constraint{{1}, lp::Relation::less_equal, -1}}, {}};
    const auto o = lp::solve_lp(p);
    if (o.status != lp::Status::infeasible || !lp::check_certificate(p, o)) return false;
    p.constraints[0].rhs = 1;
    return !lp::check_certificate(p, o);
  });
  add("scale bound zero for the balanced cone", [] {
    const auto s = yan::sup_scale(two_point(yan::Mode::cone, {{1, -1}}), {1, 0});
    return s && *s == 0;
  });
  add("scale bound infinite for the axis cone", [] { return !yan::sup_scale(two_point(yan::Mode::cone, {{1, 0}}), {1, 0}); });
  add("scale bound two for the hull", [] {
    const auto s = yan::sup_scale(two_point(yan::Mode::hull, {{0, 0}, {2, 0}}), {1, 0});
    return s && *s == 2;
  });
  add("indicator condition for both cones", [] {
    const auto ok = yan::check_condition_ii(two_point(yan::Mode::cone, {{1, -1}}));
    const auto bad = yan::check_condition_ii(two_point(yan::Mode::cone, {{1, 0}}));
    return ok.holds && !bad.holds && bad.witness == std::vector<std::size_t>{0};
  });
  add("certificate for the balanced cone", [] {
    const auto m = two_point(yan::Mode::cone, {{1, -1}});
    const auto s = yan::find_certificate(m);
    if (!s.found()) return false;
    const auto& c = *s.certificate;
    return c.p == std::vector<Rational>{q("1/2"), q("1/2")} && c.margin == 1 && c.k_bound == 0 && c.ratio_bound == 1 &&
           yan::verify_certificate(m, c);
  });
  add("witness for the axis cone", [] {
    const auto s = yan::find_certificate(two_point(yan::Mode::cone, {{1, 0}}));
    return !s.found() && s.witness == std::vector<std::size_t>{0};
  });
  add("cone certificate with positive pairing is rejected", [] {
    const auto m = two_point(yan::Mode::cone, {{1, 0}});
    const yan::Certificate c{{q("1/2"), q("1/2")}, q("1/2"), 1, 1};
    return !yan::verify_certificate(m, c);
  });
  add("three conditions agree on both cones", [] {
    const auto good = yan::check_equivalence(two_point(yan::Mode::cone, {{1, -1}}));
    const auto bad = yan::check_equivalence(two_point(yan::Mode::cone, {{1, 0}}));
    return good.consistent() && good.condition_iii && bad.consistent() && !bad.condition_iii;
  });
  add("charge file with overlapping densities", [] {
    return text::parse_charge("charge\ndensity 0/1 1/2 coeff 1/1\ndensity 1/4 3/4 coeff 1/1\n") ==
           dens("0", "1/4") + dens("1/4", "1/2", "2") + dens("1/2", "3/4");
  });
  return checks;
}

struct SelfCheckResult {
  std::string name;
  bool passed;
  std::string error;  // set when the check threw
};

inline std::vector<SelfCheckResult> run_selftest() {
  std::vector<SelfCheckResult> out;
  for (const auto& check : selftest_checks()) {
    try {
      out.push_back(SelfCheckResult{check.name, check.run(), {}});
    } catch (const std::exception& e) {
      out.push_back(SelfCheckResult{check.name, false, e.what()});
    }
  }
  return out;
}

}  // namespace chargekit
