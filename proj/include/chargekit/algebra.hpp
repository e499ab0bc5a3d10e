#pragma once

// The interval algebra on Ω = [0,1): finite disjoint unions of half-open
// rational intervals [a,b). Singletons and closed intervals are not members.

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chargekit/errors.hpp"
#include "chargekit/rational.hpp"

namespace chargekit {

/// Half-open interval [lo, hi). Empty when lo >= hi.
struct Interval {
  Rational lo;
  Rational hi;

  bool empty() const { return !(lo < hi); }
  Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

class CanonicalSet;
CanonicalSet canonicalize(std::vector<Interval> raw);

/// A member of the interval algebra in canonical form: sorted, pairwise
/// disjoint, non-adjacent, nonempty intervals inside [0,1).
class CanonicalSet {
 public:
  CanonicalSet() = default;

  static CanonicalSet whole() { return CanonicalSet({Interval{Rational(0), Rational(1)}}); }
  static CanonicalSet interval(Rational lo, Rational hi) {
    return canonicalize({Interval{std::move(lo), std::move(hi)}});
  }

  std::span<const Interval> intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  /// Lebesgue length.
  Rational length() const {
    Rational total = 0;
    for (const auto& iv : intervals_) total += iv.hi - iv.lo;
    return total;
  }

  friend bool operator==(const CanonicalSet& a, const CanonicalSet& b) { return a.intervals_ == b.intervals_; }

 private:
  explicit CanonicalSet(std::vector<Interval> ivs) : intervals_(std::move(ivs)) {}
  friend CanonicalSet canonicalize(std::vector<Interval> raw);

  std::vector<Interval> intervals_;
};

inline void require_unit_interval(const Rational& x, const char* what) {
  if (x < 0 || x > 1) throw OutOfRange(std::string(what) + " " + to_string(x) + " outside [0,1]");
}

/// Canonical form of the union of the given pairs. Each pair must satisfy
/// 0 <= a <= b <= 1; empty pairs are dropped.
inline CanonicalSet canonicalize(std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    require_unit_interval(iv.lo, "endpoint");
    require_unit_interval(iv.hi, "endpoint");
    if (iv.hi < iv.lo) throw OutOfRange("interval [" + to_string(iv.lo) + "," + to_string(iv.hi) + ") has a > b");
  }
  std::erase_if(raw, [](const Interval& iv) { return iv.empty(); });
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return CanonicalSet(std::move(out));
}

enum class BooleanOp { unite, intersect, difference, symmetric_difference };

namespace detail {

// Membership without range checks; x may be anything.
inline bool member(const CanonicalSet& set, const Rational& x) {
  const auto ivs = set.intervals();
  auto it = std::upper_bound(ivs.begin(), ivs.end(), x, [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == ivs.begin()) return false;
  --it;
  return x < it->hi;
}

inline std::vector<Rational> breakpoints(std::initializer_list<const CanonicalSet*> sets) {
  std::vector<Rational> pts;
  for (const auto* s : sets) {
    for (const auto& iv : s->intervals()) {
      pts.push_back(iv.lo);
      pts.push_back(iv.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

inline CanonicalSet boolean(BooleanOp op, const CanonicalSet& a, const CanonicalSet& b) {
  const auto pts = detail::breakpoints({&a, &b});
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const bool in_a = detail::member(a, pts[i]);
    const bool in_b = detail::member(b, pts[i]);
    bool keep = false;
    switch (op) {
      case BooleanOp::unite: keep = in_a || in_b; break;
      case BooleanOp::intersect: keep = in_a && in_b; break;
      case BooleanOp::difference: keep = in_a && !in_b; break;
      case BooleanOp::symmetric_difference: keep = in_a != in_b; break;
    }
    if (keep) pieces.push_back(Interval{pts[i], pts[i + 1]});
  }
  return canonicalize(std::move(pieces));
}

inline CanonicalSet set_union(const CanonicalSet& a, const CanonicalSet& b) { return boolean(BooleanOp::unite, a, b); }
inline CanonicalSet set_intersection(const CanonicalSet& a, const CanonicalSet& b) {
  return boolean(BooleanOp::intersect, a, b);
}
inline CanonicalSet set_difference(const CanonicalSet& a, const CanonicalSet& b) {
  return boolean(BooleanOp::difference, a, b);
}
inline CanonicalSet symmetric_difference(const CanonicalSet& a, const CanonicalSet& b) {
  return boolean(BooleanOp::symmetric_difference, a, b);
}
inline CanonicalSet complement(const CanonicalSet& a) { return set_difference(CanonicalSet::whole(), a); }

inline bool is_subset(const CanonicalSet& a, const CanonicalSet& b) { return set_difference(a, b).empty(); }

/// Length of a ∩ iv.
inline Rational intersection_length(const CanonicalSet& a, const Interval& iv) {
  Rational total = 0;
  for (const auto& piece : a.intervals()) {
    if (!(piece.lo < iv.hi)) break;
    const Rational& lo = max_of(piece.lo, iv.lo);
    const Rational& hi = min_of(piece.hi, iv.hi);
    if (lo < hi) total += hi - lo;
  }
  return total;
}

inline bool contains_point(const CanonicalSet& a, const Rational& x) {
  if (x < 0 || !(x < 1)) throw OutOfRange("point " + to_string(x) + " outside [0,1)");
  return detail::member(a, x);
}

/// True iff (c-ε, c) ⊆ a for some ε > 0.
inline bool left_neighborhood(const CanonicalSet& a, const Rational& c) {
  if (!(c > 0) || c > 1) throw OutOfRange("left-neighborhood anchor " + to_string(c) + " outside (0,1]");
  for (const auto& iv : a.intervals()) {
    if (iv.lo < c && c <= iv.hi) return true;
    if (!(iv.lo < c)) break;
  }
  return false;
}

/// True iff (c, c+ε) ⊆ a for some ε > 0.
inline bool right_neighborhood(const CanonicalSet& a, const Rational& c) {
  if (c < 0 || !(c < 1)) throw OutOfRange("right-neighborhood anchor " + to_string(c) + " outside [0,1)");
  return detail::member(a, c);
}

}  // namespace chargekit
