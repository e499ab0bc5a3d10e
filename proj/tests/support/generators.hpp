#pragma once

// Seeded random inputs for the property and acceptance suites. Coordinates
// live on a handful of small-denominator grids so that coincidences
// (shared endpoints, abutting intervals, repeated keys) happen often.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "chargekit/charge.hpp"
#include "chargekit/completion.hpp"
#include "chargekit/ratlp.hpp"
#include "chargekit/yan.hpp"

namespace testkit {

using chargekit::CanonicalSet;
using chargekit::Charge;
using chargekit::ExtendedPart;
using chargekit::ExtendedSet;
using chargekit::Interval;
using chargekit::Primitive;
using chargekit::Rational;
using chargekit::Term;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

  int denominator() {
    static const std::vector<int> dens{2, 3, 4, 6, 8, 12, 16};
    return pick(dens);
  }

  /// A grid coordinate in [0,1].
  Rational coordinate() {
    const int d = denominator();
    return chargekit::make_rational(integer(0, d), d);
  }
  /// A grid coordinate in [0,1).
  Rational location() {
    const int d = denominator();
    return chargekit::make_rational(integer(0, d - 1), d);
  }
  /// A grid coordinate in (0,1].
  Rational limit_point() {
    const int d = denominator();
    return chargekit::make_rational(integer(1, d), d);
  }

  Rational coefficient(bool positive) {
    const int d = integer(1, 4);
    int n = integer(1, 3 * d);
    if (!positive && coin()) n = -n;
    return chargekit::make_rational(n, d);
  }

  Interval interval() {
    Rational a = coordinate();
    Rational b = coordinate();
    while (a == b) b = coordinate();
    if (b < a) std::swap(a, b);
    return Interval{a, b};
  }

  /// Raw, possibly overlapping intervals.
  std::vector<Interval> raw_set(int max_intervals) {
    std::vector<Interval> out;
    const int k = integer(0, max_intervals);
    for (int i = 0; i < k; ++i) out.push_back(interval());
    return out;
  }

  CanonicalSet set(int max_intervals = 3) { return chargekit::canonicalize(raw_set(max_intervals)); }

  struct ChargeShape {
    int max_terms = 8;
    bool positive = false;
    bool points = true;
    bool densities = true;
    bool left_limits = true;
  };

  /// Raw primitive terms (unmerged, possibly overlapping densities).
  std::vector<Term> terms(const ChargeShape& shape) {
    std::vector<int> kinds;
    if (shape.points) kinds.push_back(0);
    if (shape.densities) kinds.push_back(1);
    if (shape.left_limits) kinds.push_back(2);
    std::vector<Term> out;
    const int k = integer(1, shape.max_terms);
    for (int i = 0; i < k; ++i) {
      const Rational w = coefficient(shape.positive);
      switch (pick(kinds)) {
        case 0: out.push_back(Term{Primitive::point_mass(location()), w}); break;
        case 1: {
          const Interval iv = interval();
          out.push_back(Term{Primitive::density(iv.lo, iv.hi), w});
          break;
        }
        default: out.push_back(Term{Primitive::left_limit(limit_point()), w}); break;
      }
    }
    return out;
  }

  Charge charge(const ChargeShape& shape) { return Charge::from_terms(terms(shape)); }

  Charge positive_charge(int max_terms = 8, bool left_limits = true) {
    ChargeShape s;
    s.max_terms = max_terms;
    s.positive = true;
    s.left_limits = left_limits;
    return charge(s);
  }

  ExtendedSet extended_set(int max_parts = 3) {
    std::vector<ExtendedPart> parts;
    const int k = integer(0, max_parts);
    for (int i = 0; i < k; ++i) {
      if (coin(0.25)) {
        parts.push_back(ExtendedPart::point(location()));
      } else {
        const Interval iv = interval();
        parts.push_back(ExtendedPart{iv.lo, iv.hi, coin(), coin()});
      }
    }
    return ExtendedSet::from_parts(parts);
  }

  std::vector<Rational> vector(std::size_t n, int lo, int hi, int den) {
    std::vector<Rational> v(n);
    for (auto& x : v) x = chargekit::make_rational(integer(lo, hi), den);
    return v;
  }

  chargekit::yan::YanModel yan_model(std::size_t max_n, std::size_t max_gens) {
    chargekit::yan::YanModel m;
    m.n = static_cast<std::size_t>(integer(1, static_cast<int>(max_n)));
    do {
      m.lambda = vector(m.n, 0, 3, 1);
      for (auto& w : m.lambda)
        if (coin(0.2)) w = 0;
    } while (std::all_of(m.lambda.begin(), m.lambda.end(), [](const Rational& w) { return w == 0; }));
    Rational total = 0;
    for (const auto& w : m.lambda) total += w;
    for (auto& w : m.lambda) w /= total;
    const int gens = integer(0, static_cast<int>(max_gens));
    for (int j = 0; j < gens; ++j) m.generators.push_back(vector(m.n, -2, 2, integer(1, 2)));
    m.mode = coin() ? chargekit::yan::Mode::cone : chargekit::yan::Mode::hull;
    return m;
  }

  /// Small LP; variables are nonnegative unless `free_variables` is set.
  chargekit::lp::LinearProgram linear_program(bool free_variables) {
    namespace lp = chargekit::lp;
    lp::LinearProgram p;
    const std::size_t n = static_cast<std::size_t>(integer(1, 3));
    const std::size_t m = static_cast<std::size_t>(integer(0, 4));
    p.objective = vector(n, -3, 3, 1);
    for (std::size_t i = 0; i < m; ++i) {
      lp::Constraint c;
      c.coefficients = vector(n, -3, 3, integer(1, 2));
      const int rel = integer(0, 5);
      c.relation = rel < 3 ? lp::Relation::less_equal : rel < 5 ? lp::Relation::greater_equal : lp::Relation::equal;
      c.rhs = chargekit::make_rational(integer(-4, 6), integer(1, 2));
      p.constraints.push_back(std::move(c));
    }
    if (free_variables) {
      p.bounds.assign(n, lp::Bound::nonnegative);
      for (auto& b : p.bounds)
        if (coin(0.3)) b = lp::Bound::free;
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testkit
