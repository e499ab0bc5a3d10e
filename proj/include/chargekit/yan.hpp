#pragma once

// Separation certificates on a finite sample space {0, ..., n-1}.
//
// K is either the convex hull of the generators and 0 (hull mode) or the
// convex cone they generate (cone mode), and C = K - (nonnegative vectors).
// Coordinates where the reference weights λ vanish are quotiented away before
// any program is built. On a finite space C is polyhedral, hence closed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chargekit/errors.hpp"
#include "chargekit/rational.hpp"
#include "chargekit/ratlp.hpp"

namespace chargekit::yan {

enum class Mode { hull, cone };

using chargekit::to_string;

inline const char* to_string(Mode m) { return m == Mode::hull ? "hull" : "cone"; }

inline constexpr std::size_t max_exhaustive_space = 12;

struct YanModel {
  std::size_t n = 0;
  std::vector<Rational> lambda;
  std::vector<std::vector<Rational>> generators;
  Mode mode = Mode::cone;

  void validate() const {
    if (n < 1) throw BadInput("sample space must have at least one point");
    if (lambda.size() != n) throw Malformed("lambda has " + std::to_string(lambda.size()) + " weights for space " + std::to_string(n));
    bool positive = false;
    for (const auto& w : lambda) {
      if (w < 0) throw BadInput("lambda weights must be nonnegative");
      positive = positive || w > 0;
    }
    if (!positive) throw BadInput("lambda needs at least one positive weight");
    for (const auto& g : generators)
      if (g.size() != n) throw Malformed("generator has " + std::to_string(g.size()) + " entries for space " + std::to_string(n));
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t w = 0; w < n; ++w)
      if (lambda[w] > 0) s.push_back(w);
    return s;
  }
};

/// Model in the line-oriented `yan` file syntax.
inline std::string format_model(const YanModel& m) {
  std::ostringstream out;
  out << "yan\nspace " << m.n << "\nlambda";
  for (const auto& w : m.lambda) out << ' ' << to_string(w);
  out << "\nmode " << to_string(m.mode) << '\n';
  for (const auto& g : m.generators) {
    out << "gen";
    for (const auto& v : g) out << ' ' << to_string(v);
    out << '\n';
  }
  return out.str();
}

/// sup{t >= 0 : t·f ∈ C}; nullopt stands for +∞.
using ScaleBound = std::optional<Rational>;

inline ScaleBound sup_scale(const YanModel& m, const std::vector<Rational>& f) {
  m.validate();
  if (f.size() != m.n) throw BadInput("f has " + std::to_string(f.size()) + " entries for space " + std::to_string(m.n));
  Rational mass = 0;
  for (std::size_t w = 0; w < m.n; ++w) {
    if (f[w] < 0) throw BadInput("f must be nonnegative");
    mass += f[w] * m.lambda[w];
  }
  if (!(mass > 0)) throw BadInput("f must have positive lambda-integral");

  // Variables: t, θ_1..θ_J (all nonnegative).
  const std::size_t gens = m.generators.size();
  lp::LinearProgram prog;
  prog.objective.assign(gens + 1, 0);
  prog.objective[0] = 1;
  for (auto w : m.support()) {
    lp::Constraint row{std::vector<Rational>(gens + 1), lp::Relation::less_equal, 0};
    row.coefficients[0] = f[w];
    for (std::size_t j = 0; j < gens; ++j) row.coefficients[j + 1] = -m.generators[j][w];
    prog.constraints.push_back(std::move(row));
  }
  if (m.mode == Mode::hull) {
    lp::Constraint simplex{std::vector<Rational>(gens + 1, 1), lp::Relation::less_equal, 1};
    simplex.coefficients[0] = 0;
    prog.constraints.push_back(std::move(simplex));
  }
  const auto outcome = lp::solve_lp(prog);
  if (outcome.status == lp::Status::unbounded) return std::nullopt;
  if (outcome.status != lp::Status::optimal) throw Error("scale program unexpectedly infeasible");
  return outcome.value;
}

inline std::vector<Rational> indicator(std::size_t n, const std::vector<std::size_t>& set) {
  std::vector<Rational> f(n, 0);
  for (auto w : set) f[w] = 1;
  return f;
}

struct ConditionII {
  bool holds = true;
  std::optional<std::vector<std::size_t>> witness;  // first A (in bitmask order) with unbounded scale
  std::size_t sets_checked = 0;
};

/// Checks every nonempty A ⊆ supp(λ) in increasing bitmask order.
inline ConditionII check_condition_ii(const YanModel& m) {
  m.validate();
  if (m.n > max_exhaustive_space)
    throw TooLarge("exhaustive check limited to " + std::to_string(max_exhaustive_space) + " points, got " + std::to_string(m.n));
  std::uint32_t support_mask = 0;
  for (auto w : m.support()) support_mask |= 1u << w;
  ConditionII result;
  for (std::uint32_t mask = 1; mask < (1u << m.n); ++mask) {
    if ((mask & ~support_mask) != 0) continue;
    std::vector<std::size_t> set;
    for (std::size_t w = 0; w < m.n; ++w)
      if (mask & (1u << w)) set.push_back(w);
    ++result.sets_checked;
    if (!sup_scale(m, indicator(m.n, set))) {
      result.holds = false;
      result.witness = std::move(set);
      return result;
    }
  }
  return result;
}

struct Certificate {
  std::vector<Rational> p;  // probability on {0..n-1}
  Rational k_bound;         // sup over K of p·k
  Rational ratio_bound;     // max over supp(λ) of p_ω/λ_ω
  Rational margin;          // min over supp(λ) of p_ω/λ_ω
};

struct CertificateSearch {
  std::optional<Certificate> certificate;
  std::optional<std::vector<std::size_t>> witness;  // set A violating the scale condition

  bool found() const { return certificate.has_value(); }
};

namespace detail {

inline Rational k_bound(const YanModel& m, const std::vector<Rational>& p) {
  Rational best = 0;
  for (const auto& g : m.generators) {
    Rational v = 0;
    for (std::size_t w = 0; w < m.n; ++w) v += p[w] * g[w];
    best = max_of(best, v);
  }
  return best;
}

}  // namespace detail

/// Maximizes the margin t subject to p_ω >= t·λ_ω, Σp = 1, p = 0 off the
/// support and, in cone mode, p·k_j <= 0 for every generator. A positive
/// optimum yields a certificate; otherwise the scale condition has a witness.
inline CertificateSearch find_certificate(const YanModel& m) {
  m.validate();
  const auto supp = m.support();
  const std::size_t s = supp.size();

  // Variables: p over the support, then t.
  lp::LinearProgram prog;
  prog.objective.assign(s + 1, 0);
  prog.objective[s] = 1;
  if (m.mode == Mode::cone) {
    for (const auto& g : m.generators) {
      lp::Constraint row{std::vector<Rational>(s + 1, 0), lp::Relation::less_equal, 0};
      for (std::size_t i = 0; i < s; ++i) row.coefficients[i] = g[supp[i]];
      prog.constraints.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < s; ++i) {
    lp::Constraint row{std::vector<Rational>(s + 1, 0), lp::Relation::greater_equal, 0};
    row.coefficients[i] = 1;
    row.coefficients[s] = -m.lambda[supp[i]];
    prog.constraints.push_back(std::move(row));
  }
  lp::Constraint total{std::vector<Rational>(s + 1, 1), lp::Relation::equal, 1};
  total.coefficients[s] = 0;
  prog.constraints.push_back(std::move(total));

  const auto outcome = lp::solve_lp(prog);
  CertificateSearch search;
  if (outcome.status == lp::Status::optimal && outcome.value > 0) {
    Certificate c;
    c.p.assign(m.n, 0);
    for (std::size_t i = 0; i < s; ++i) c.p[supp[i]] = outcome.solution[i];
    c.k_bound = m.mode == Mode::cone ? Rational(0) : detail::k_bound(m, c.p);
    bool first = true;
    for (auto w : supp) {
      const Rational ratio = c.p[w] / m.lambda[w];
      if (first || ratio > c.ratio_bound) c.ratio_bound = ratio;
      if (first || ratio < c.margin) c.margin = ratio;
      first = false;
    }
    search.certificate = std::move(c);
    return search;
  }
  search.witness = check_condition_ii(m).witness;
  return search;
}

/// Re-checks a certificate: Σp = 1, p > 0 exactly on supp(λ), the recorded
/// bounds match p, and in cone mode p·k_j <= 0 for every generator.
inline bool verify_certificate(const YanModel& m, const Certificate& c) {
  m.validate();
  if (c.p.size() != m.n) return false;
  Rational total = 0;
  for (std::size_t w = 0; w < m.n; ++w) {
    if (c.p[w] < 0) return false;
    if ((c.p[w] > 0) != (m.lambda[w] > 0)) return false;
    total += c.p[w];
  }
  if (total != 1) return false;
  const Rational kb = detail::k_bound(m, c.p);
  if (m.mode == Mode::cone) {
    if (kb > 0 || c.k_bound != 0) return false;
  } else if (c.k_bound != kb) {
    return false;
  }
  std::optional<Rational> hi, lo;
  for (auto w : m.support()) {
    const Rational ratio = c.p[w] / m.lambda[w];
    if (!hi || ratio > *hi) hi = ratio;
    if (!lo || ratio < *lo) lo = ratio;
  }
  return hi && *hi == c.ratio_bound && *lo == c.margin && c.margin > 0;
}

struct EquivalenceReport {
  bool condition_i = true;   // every sampled f has a finite scale bound
  bool condition_ii = true;  // every indicator has a finite scale bound
  bool condition_iii = true; // a certificate exists
  std::size_t samples = 0;
  std::string offending;     // serialized model when the three disagree

  bool consistent() const { return condition_i == condition_ii && condition_ii == condition_iii; }
};

/// Evaluates all three conditions. The sample family for the first one holds
/// every support indicator, 1/3-2/3 mixtures of neighbouring singletons and
/// 100 seeded random nonnegative vectors.
inline EquivalenceReport check_equivalence(const YanModel& m, std::uint64_t seed = 20240601) {
  m.validate();
  if (m.n > max_exhaustive_space)
    throw TooLarge("equivalence check limited to " + std::to_string(max_exhaustive_space) + " points");
  EquivalenceReport report;
  report.condition_ii = check_condition_ii(m).holds;
  report.condition_iii = find_certificate(m).found();

  const auto supp = m.support();
  std::vector<std::vector<Rational>> samples;
  for (std::uint32_t mask = 1; mask < (1u << supp.size()); ++mask) {
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < supp.size(); ++i)
      if (mask & (1u << i)) set.push_back(supp[i]);
    samples.push_back(indicator(m.n, set));
  }
  for (std::size_t i = 0; i + 1 < supp.size(); ++i) {
    std::vector<Rational> f(m.n, 0);
    f[supp[i]] = make_rational(1, 3);
    f[supp[i + 1]] = make_rational(2, 3);
    samples.push_back(std::move(f));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> quarter(0, 4);
  for (int k = 0; k < 100; ++k) {
    std::vector<Rational> f(m.n);
    for (auto& v : f) v = make_rational(quarter(rng), 4);
    samples.push_back(std::move(f));
  }

  for (const auto& f : samples) {
    Rational mass = 0;
    for (std::size_t w = 0; w < m.n; ++w) mass += f[w] * m.lambda[w];
    if (!(mass > 0)) continue;
    ++report.samples;
    if (!sup_scale(m, f)) report.condition_i = false;
  }
  if (!report.consistent()) report.offending = format_model(m);
  return report;
}

}  // namespace chargekit::yan
