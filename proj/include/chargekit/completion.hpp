#pragma once

// The λ-completion of the interval algebra: sets B squeezable between
// algebra sets A ⊆ B ⊆ A' with λ(A' ∖ A) arbitrarily small, the unique
// extension bar-λ, and a σ-additive disjoint sequence obtained by exhaustion.

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chargekit/algebra.hpp"
#include "chargekit/charge.hpp"
#include "chargekit/domination.hpp"
#include "chargekit/errors.hpp"

namespace chargekit {

/// One interval with independently open or closed ends. lo == hi with both
/// ends closed is the singleton {lo}.
struct ExtendedPart {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = false;

  bool is_point() const { return lo == hi; }
  static ExtendedPart point(const Rational& x) { return {x, x, true, true}; }

  bool contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }

  friend bool operator==(const ExtendedPart&, const ExtendedPart&) = default;
};

/// A finite union of points and intervals inside Ω, stored as breakpoints
/// 0 = p_0 < ... < p_k = 1 with the membership of every p_i (i < k) and of
/// every open gap (p_i, p_{i+1}). Breakpoints that separate nothing are
/// removed, so equal sets have equal representations.
class ExtendedSet {
 public:
  ExtendedSet() : coords_{Rational(0), Rational(1)}, point_in_{false}, gap_in_{false} {}

  static ExtendedSet from_parts(std::span<const ExtendedPart> parts) {
    std::vector<Rational> pts{Rational(0), Rational(1)};
    for (const auto& p : parts) {
      require_unit_interval(p.lo, "extended-set coordinate");
      require_unit_interval(p.hi, "extended-set coordinate");
      if (p.hi < p.lo) throw OutOfRange("extended-set part has lo > hi");
      pts.push_back(p.lo);
      pts.push_back(p.hi);
    }
    return build(std::move(pts), [&](const Rational& x) {
      return std::any_of(parts.begin(), parts.end(), [&](const ExtendedPart& p) { return p.contains(x); });
    });
  }
  static ExtendedSet from_parts(std::initializer_list<ExtendedPart> parts) {
    return from_parts(std::span<const ExtendedPart>(parts.begin(), parts.size()));
  }

  static ExtendedSet from_algebra(const CanonicalSet& a) {
    std::vector<ExtendedPart> parts;
    for (const auto& iv : a.intervals()) parts.push_back(ExtendedPart{iv.lo, iv.hi, true, false});
    return from_parts(parts);
  }

  static ExtendedSet whole() { return from_algebra(CanonicalSet::whole()); }

  /// Membership; coordinates outside [0,1) are never members.
  bool contains(const Rational& x) const {
    if (x < 0 || !(x < 1)) return false;
    const std::size_t i = cell_of(x);
    return x == coords_[i] ? point_in_[i] : gap_in_[i];
  }

  /// (x, x+ε) ⊆ B for some ε > 0.
  bool contains_right_of(const Rational& x) const {
    if (x < 0 || !(x < 1)) return false;
    return gap_in_[cell_of(x)];
  }

  /// (x-ε, x) ⊆ B for some ε > 0.
  bool contains_left_of(const Rational& x) const {
    if (!(x > 0) || x > 1) return false;
    auto it = std::lower_bound(coords_.begin(), coords_.end(), x);
    return gap_in_[static_cast<std::size_t>(it - coords_.begin()) - 1];
  }

  Rational intersection_length(const Interval& iv) const {
    Rational total = 0;
    for (std::size_t i = 0; i < gap_in_.size(); ++i) {
      if (!gap_in_[i]) continue;
      const Rational& lo = max_of(coords_[i], iv.lo);
      const Rational& hi = min_of(coords_[i + 1], iv.hi);
      if (lo < hi) total += hi - lo;
    }
    return total;
  }

  Rational length() const { return intersection_length(Interval{Rational(0), Rational(1)}); }

  /// Maximal intervals and isolated points, ascending.
  std::vector<ExtendedPart> parts() const {
    std::vector<ExtendedPart> out;
    const std::size_t k = gap_in_.size();
    std::optional<ExtendedPart> open;
    for (std::size_t i = 0; i < k; ++i) {
      if (point_in_[i] && !open) open = ExtendedPart{coords_[i], coords_[i], true, true};
      if (!point_in_[i] && open) {
        open->hi = coords_[i];
        open->hi_closed = false;
        out.push_back(*open);
        open.reset();
      }
      if (gap_in_[i]) {
        if (!open) open = ExtendedPart{coords_[i], coords_[i], false, false};
      } else if (open) {
        open->hi = coords_[i];
        open->hi_closed = true;
        out.push_back(*open);
        open.reset();
      }
    }
    if (open) {
      open->hi = coords_[k];
      open->hi_closed = false;
      out.push_back(*open);
    }
    return out;
  }

  /// The same set as an algebra member, when it is one.
  std::optional<CanonicalSet> as_algebra_set() const {
    std::vector<Interval> ivs;
    for (const auto& p : parts()) {
      if (!p.lo_closed || (p.hi_closed && p.hi < 1) || p.is_point()) return std::nullopt;
      ivs.push_back(Interval{p.lo, p.hi});
    }
    return canonicalize(std::move(ivs));
  }

  friend ExtendedSet set_union(const ExtendedSet& a, const ExtendedSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
  }
  friend ExtendedSet set_intersection(const ExtendedSet& a, const ExtendedSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
  }
  friend ExtendedSet set_difference(const ExtendedSet& a, const ExtendedSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
  }
  friend ExtendedSet complement(const ExtendedSet& a) { return set_difference(whole(), a); }

  friend bool operator==(const ExtendedSet& a, const ExtendedSet& b) {
    return a.coords_ == b.coords_ && a.point_in_ == b.point_in_ && a.gap_in_ == b.gap_in_;
  }

 private:
  std::size_t cell_of(const Rational& x) const {
    auto it = std::upper_bound(coords_.begin(), coords_.end(), x);
    return static_cast<std::size_t>(it - coords_.begin()) - 1;
  }

  template <class Membership>
  static ExtendedSet build(std::vector<Rational> pts, Membership in) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    ExtendedSet out;
    out.coords_.clear();
    out.point_in_.clear();
    out.gap_in_.clear();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const bool point = in(pts[i]);
      const bool gap = in(Rational((pts[i] + pts[i + 1]) / 2));
      if (i > 0 && out.gap_in_.back() == point && point == gap) continue;
      out.coords_.push_back(pts[i]);
      out.point_in_.push_back(point);
      out.gap_in_.push_back(gap);
    }
    out.coords_.push_back(Rational(1));
    return out;
  }

  template <class Op>
  static ExtendedSet combine(const ExtendedSet& a, const ExtendedSet& b, Op op) {
    std::vector<Rational> pts = a.coords_;
    pts.insert(pts.end(), b.coords_.begin(), b.coords_.end());
    return build(std::move(pts), [&](const Rational& x) { return op(a.contains(x), b.contains(x)); });
  }

  std::vector<Rational> coords_;
  std::vector<bool> point_in_;
  std::vector<bool> gap_in_;
};

struct CompletionStatus {
  Rational inner;  // sup of λ(A) over algebra A ⊆ B
  Rational outer;  // inf of λ(A') over algebra A' ⊇ B

  bool member() const { return inner == outer; }
  /// bar-λ(B) when B is in the completion.
  std::optional<Rational> extension() const { return member() ? std::optional<Rational>(inner) : std::nullopt; }
};

inline CompletionStatus completion_status(const Charge& lambda, const ExtendedSet& b) {
  require_positive(lambda, "completion_status");
  CompletionStatus status{0, 0};
  for (const auto& [x, w] : lambda.point_masses()) {
    const bool right = b.contains_right_of(x);
    if (b.contains(x) && right) status.inner += w;
    if (b.contains(x) || right) status.outer += w;
  }
  for (const auto& p : lambda.densities()) {
    const Rational mass = p.coefficient * b.intersection_length(p.interval);
    status.inner += mass;
    status.outer += mass;
  }
  for (const auto& [c, w] : lambda.left_limits()) {
    // A finite union either contains a left neighborhood of c or misses one.
    if (b.contains_left_of(c)) {
      status.inner += w;
      status.outer += w;
    }
  }
  return status;
}

inline Rational completed_measure(const Charge& lambda, const ExtendedSet& b) {
  const auto status = completion_status(lambda, b);
  if (!status.member()) throw NotMember("set is not in the completion: inner " + to_string(status.inner) + " < outer " + to_string(status.outer));
  return status.inner;
}

/// A_n = [limit - scale/n, limit - scale/(n+1)) for n >= first: infinitely
/// many disjoint pieces accumulating at `limit` from the left.
struct HarmonicTail {
  Rational limit;
  Rational scale;
  unsigned long first = 1;

  Interval piece(unsigned long n) const {
    return Interval{limit - scale / Rational(n), limit - scale / Rational(n + 1)};
  }
  Interval hull() const { return Interval{limit - scale / Rational(first), limit}; }

  void validate() const {
    if (!(scale > 0) || first < 1) throw BadInput("harmonic tail needs scale > 0 and first >= 1");
    require_unit_interval(limit, "harmonic tail limit");
    if (hull().lo < 0) throw OutOfRange("harmonic tail starts below 0");
  }
};

/// Disjoint sequence of algebra sets: a finite head, optionally followed by
/// a harmonic tail.
struct SetSequence {
  std::vector<CanonicalSet> head;
  std::optional<HarmonicTail> tail;

  CanonicalSet union_of_head() const {
    CanonicalSet u;
    for (const auto& a : head) u = set_union(u, a);
    return u;
  }
};

struct SigmaDefect {
  ExtendedSet test;
  Rational measure;  // bar-λ(B)
  Rational series;   // Σ_n bar-λ(B ∩ A_n)
  Rational defect;   // measure - series
};

namespace detail {

inline void require_disjoint(const SetSequence& seq) {
  CanonicalSet seen;
  for (const auto& a : seq.head) {
    if (!set_intersection(seen, a).empty()) throw NotDisjoint("sequence members overlap");
    seen = set_union(seen, a);
  }
  if (seq.tail) {
    seq.tail->validate();
    const auto& h = seq.tail->hull();
    if (!set_intersection(seen, CanonicalSet::interval(h.lo, h.hi)).empty())
      throw NotDisjoint("sequence head overlaps its tail");
  }
}

}  // namespace detail

/// Σ_{n >= first} bar-λ(B ∩ A_n) over a harmonic tail, in closed form. Every
/// primitive inside the tail's hull lands in exactly one piece except a left
/// limit sitting at the accumulation point, which no piece ever captures.
inline Rational tail_series(const Charge& lambda, const ExtendedSet& b, const HarmonicTail& tail) {
  const Interval h = tail.hull();
  const ExtendedSet clipped = set_intersection(b, ExtendedSet::from_algebra(CanonicalSet::interval(h.lo, h.hi)));
  Rational total = completed_measure(lambda, clipped);
  const auto it = lambda.left_limits().find(tail.limit);
  if (it != lambda.left_limits().end() && clipped.contains_left_of(tail.limit)) total -= it->second;
  return total;
}

/// Per-test defect bar-λ(B) - Σ_n bar-λ(B ∩ A_n).
inline std::vector<SigmaDefect> verify_sigma_additivity(const Charge& lambda, const SetSequence& seq,
                                                        const std::vector<ExtendedSet>& tests) {
  require_positive(lambda, "verify_sigma_additivity");
  detail::require_disjoint(seq);
  std::vector<SigmaDefect> out;
  for (const auto& b : tests) {
    const auto status = completion_status(lambda, b);
    if (!status.member()) throw NotMember("test set is not in the completion");
    Rational series = 0;
    for (const auto& a : seq.head) series += completed_measure(lambda, set_intersection(b, ExtendedSet::from_algebra(a)));
    if (seq.tail) series += tail_series(lambda, b, *seq.tail);
    Rational defect = status.inner - series;
    out.push_back(SigmaDefect{b, status.inner, std::move(series), std::move(defect)});
  }
  return out;
}

inline std::vector<SigmaDefect> verify_sigma_additivity(const Charge& lambda, const std::vector<CanonicalSet>& seq,
                                                        const std::vector<ExtendedSet>& tests) {
  return verify_sigma_additivity(lambda, SetSequence{seq, std::nullopt}, tests);
}

inline bool all_zero(const std::vector<SigmaDefect>& defects) {
  return std::all_of(defects.begin(), defects.end(), [](const SigmaDefect& d) { return d.defect == 0; });
}

struct CompletionParameters {
  Rational capture = inverse_power_of_two(10);  // ε for the per-primitive capture sets
  Rational grid = inverse_power_of_two(8);      // cell width covering the density support
};

/// The candidate family fed to exhaustion: a capture set at every atomic
/// location ([x, x+ε) for point masses, [c-ε, c) for left limits) and the
/// grid cells of the density support outside those captures.
inline std::vector<CanonicalSet> completion_family(const Charge& lambda, const CompletionParameters& params = {}) {
  require_positive(lambda, "completion_family");
  if (!(params.capture > 0) || !(params.grid > 0) || params.grid > 1 || numerator(params.grid) != 1)
    throw BadInput("completion parameters need capture > 0 and grid = 1/N");
  const Rational radius = min_of(params.capture, detail::min_gap(detail::landmarks({&lambda})) / 2);

  std::vector<CanonicalSet> family;
  std::vector<Interval> captured;
  for (const auto& kv : lambda.point_masses()) {
    family.push_back(CanonicalSet::interval(kv.first, kv.first + radius));
    captured.push_back(Interval{kv.first, kv.first + radius});
  }
  for (const auto& kv : lambda.left_limits()) {
    family.push_back(CanonicalSet::interval(kv.first - radius, kv.first));
    captured.push_back(Interval{kv.first - radius, kv.first});
  }
  const CanonicalSet free_density = set_difference(lambda.density_support(), canonicalize(std::move(captured)));
  const auto cells = static_cast<unsigned long>(denominator(params.grid));
  for (unsigned long j = 0; j < cells; ++j) {
    CanonicalSet cell = set_intersection(free_density, CanonicalSet::interval(params.grid * j, params.grid * (j + 1)));
    if (!cell.empty()) family.push_back(std::move(cell));
  }
  return family;
}

/// Disjoint A_n = H_n ∖ ⋃_{j<n} H_j from greedy exhaustion of the
/// completion family; Σ λ(A_n) = λ(Ω).
inline std::vector<CanonicalSet> completion_sequence(const Charge& lambda, const CompletionParameters& params = {}) {
  const auto family = completion_family(lambda, params);
  if (family.empty()) return {};
  const auto trace = exhaust(lambda, family);
  std::vector<CanonicalSet> out;
  CanonicalSet covered;
  for (const auto& h : trace.chosen) {
    out.push_back(set_difference(h, covered));
    covered = set_union(covered, h);
  }
  return out;
}

}  // namespace chargekit
