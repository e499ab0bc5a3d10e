#pragma once

// Charges (bounded finitely additive set functions) on the interval algebra,
// restricted to finite rational combinations of three primitive kinds:
//
//   point mass   δ_x(A)  = 1 iff x ∈ A                       x ∈ [0,1)
//   density      D[a,b)(A) = Lebesgue length of A ∩ [a,b)
//   left limit   η⁻_c(A) = 1 iff (c-ε, c) ⊆ A for some ε > 0  c ∈ (0,1]
//
// Point masses and densities are countably additive; left limits are purely
// finitely additive. Distinct primitives are pairwise singular, so |μ| is the
// termwise absolute value.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chargekit/algebra.hpp"
#include "chargekit/errors.hpp"
#include "chargekit/rational.hpp"

namespace chargekit {

enum class PrimitiveKind { point_mass, density, left_limit };

inline const char* to_string(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::point_mass: return "point";
    case PrimitiveKind::density: return "density";
    case PrimitiveKind::left_limit: return "leftlim";
  }
  return "?";
}

class Primitive {
 public:
  static Primitive point_mass(Rational x) {
    if (x < 0 || !(x < 1)) throw OutOfRange("point mass location " + to_string(x) + " outside [0,1)");
    return Primitive(PrimitiveKind::point_mass, Interval{x, x});
  }
  static Primitive density(Rational a, Rational b) {
    require_unit_interval(a, "density endpoint");
    require_unit_interval(b, "density endpoint");
    if (!(a < b)) throw OutOfRange("density interval [" + to_string(a) + "," + to_string(b) + ") is empty");
    return Primitive(PrimitiveKind::density, Interval{std::move(a), std::move(b)});
  }
  static Primitive left_limit(Rational c) {
    if (!(c > 0) || c > 1) throw OutOfRange("left-limit location " + to_string(c) + " outside (0,1]");
    return Primitive(PrimitiveKind::left_limit, Interval{c, c});
  }

  PrimitiveKind kind() const { return kind_; }
  /// Location of a point mass or left limit; left endpoint of a density.
  const Rational& location() const { return span_.lo; }
  const Interval& interval() const { return span_; }

  Rational operator()(const CanonicalSet& a) const {
    switch (kind_) {
      case PrimitiveKind::point_mass: return detail::member(a, span_.lo) ? 1 : 0;
      case PrimitiveKind::density: return intersection_length(a, span_);
      case PrimitiveKind::left_limit: return left_neighborhood(a, span_.lo) ? 1 : 0;
    }
    return 0;
  }

  friend bool operator==(const Primitive& a, const Primitive& b) { return a.kind_ == b.kind_ && a.span_ == b.span_; }

 private:
  Primitive(PrimitiveKind kind, Interval span) : kind_(kind), span_(std::move(span)) {}

  PrimitiveKind kind_;
  Interval span_;
};

struct Term {
  Primitive primitive;
  Rational coefficient;
};

/// Piece of a piecewise-constant density.
struct DensityPiece {
  Interval interval;
  Rational coefficient;

  friend bool operator==(const DensityPiece& a, const DensityPiece& b) {
    return a.interval == b.interval && a.coefficient == b.coefficient;
  }
};

namespace detail {

using Pieces = std::vector<DensityPiece>;

// Drops zero pieces and merges adjacent pieces with equal coefficients.
inline Pieces normalize(Pieces in) {
  Pieces out;
  for (auto& p : in) {
    if (p.coefficient == 0 || p.interval.empty()) continue;
    if (!out.empty() && out.back().interval.hi == p.interval.lo && out.back().coefficient == p.coefficient) {
      out.back().interval.hi = p.interval.hi;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

// Value of a sorted disjoint piece list on the elementary cell starting at x.
inline Rational piece_value(const Pieces& pieces, const Rational& x) {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](const Rational& v, const DensityPiece& p) { return v < p.interval.lo; });
  if (it == pieces.begin()) return 0;
  --it;
  return x < it->interval.hi ? it->coefficient : Rational(0);
}

// Pointwise combination of two piecewise-constant functions (0 off support).
template <class BinaryOp>
Pieces combine(const Pieces& a, const Pieces& b, BinaryOp op) {
  std::vector<Rational> pts;
  for (const auto* side : {&a, &b}) {
    for (const auto& p : *side) {
      pts.push_back(p.interval.lo);
      pts.push_back(p.interval.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Pieces out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    out.push_back(DensityPiece{Interval{pts[i], pts[i + 1]}, op(piece_value(a, pts[i]), piece_value(b, pts[i]))});
  }
  return normalize(std::move(out));
}

inline Pieces restrict_pieces(const Pieces& pieces, const CanonicalSet& set) {
  Pieces out;
  for (const auto& p : pieces) {
    for (const auto& iv : set.intervals()) {
      const Rational& lo = max_of(p.interval.lo, iv.lo);
      const Rational& hi = min_of(p.interval.hi, iv.hi);
      if (lo < hi) out.push_back(DensityPiece{Interval{lo, hi}, p.coefficient});
    }
  }
  std::sort(out.begin(), out.end(), [](const DensityPiece& x, const DensityPiece& y) { return x.interval.lo < y.interval.lo; });
  return normalize(std::move(out));
}

inline void add_to(std::map<Rational, Rational>& target, const Rational& key, const Rational& value) {
  auto [it, inserted] = target.try_emplace(key, value);
  if (!inserted) it->second += value;
  if (it->second == 0) target.erase(it);
}

}  // namespace detail

/// Finite rational combination of primitives in canonical form. Equality is
/// structural and coincides with equality as set functions.
class Charge {
 public:
  Charge() = default;

  static Charge point_mass(const Rational& x, const Rational& coefficient = 1) {
    return from_terms({Term{Primitive::point_mass(x), coefficient}});
  }
  static Charge density(const Rational& a, const Rational& b, const Rational& coefficient = 1) {
    return from_terms({Term{Primitive::density(a, b), coefficient}});
  }
  static Charge left_limit(const Rational& c, const Rational& coefficient = 1) {
    return from_terms({Term{Primitive::left_limit(c), coefficient}});
  }

  /// Sums the terms; overlapping densities are refined, repeated keys merged.
  static Charge from_terms(std::span<const Term> terms) {
    Charge out;
    detail::Pieces dens;
    for (const auto& t : terms) {
      if (t.coefficient == 0) continue;
      switch (t.primitive.kind()) {
        case PrimitiveKind::point_mass: detail::add_to(out.points_, t.primitive.location(), t.coefficient); break;
        case PrimitiveKind::left_limit: detail::add_to(out.left_limits_, t.primitive.location(), t.coefficient); break;
        case PrimitiveKind::density:
          out.densities_ = detail::combine(out.densities_, {DensityPiece{t.primitive.interval(), t.coefficient}},
                                           [](const Rational& x, const Rational& y) { return Rational(x + y); });
          break;
      }
    }
    return out;
  }
  static Charge from_terms(std::initializer_list<Term> terms) {
    return from_terms(std::span<const Term>(terms.begin(), terms.size()));
  }

  /// Canonical term list: point masses, then densities, then left limits,
  /// each ascending by location.
  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (const auto& [x, w] : points_) out.push_back(Term{Primitive::point_mass(x), w});
    for (const auto& p : densities_) out.push_back(Term{Primitive::density(p.interval.lo, p.interval.hi), p.coefficient});
    for (const auto& [c, w] : left_limits_) out.push_back(Term{Primitive::left_limit(c), w});
    return out;
  }

  const std::map<Rational, Rational>& point_masses() const { return points_; }
  const std::map<Rational, Rational>& left_limits() const { return left_limits_; }
  const std::vector<DensityPiece>& densities() const { return densities_; }

  bool is_zero() const { return points_.empty() && left_limits_.empty() && densities_.empty(); }
  std::size_t term_count() const { return points_.size() + left_limits_.size() + densities_.size(); }

  bool is_positive() const {
    auto pos = [](const auto& kv) { return kv.second > 0; };
    return std::all_of(points_.begin(), points_.end(), pos) && std::all_of(left_limits_.begin(), left_limits_.end(), pos) &&
           std::all_of(densities_.begin(), densities_.end(), [](const DensityPiece& p) { return p.coefficient > 0; });
  }

  /// No left-limit terms, i.e. countably additive within this class.
  bool is_countably_additive() const { return left_limits_.empty(); }

  /// Union of the density intervals.
  CanonicalSet density_support() const {
    std::vector<Interval> ivs;
    for (const auto& p : densities_) ivs.push_back(p.interval);
    return canonicalize(std::move(ivs));
  }

  Charge& operator+=(const Charge& other) {
    for (const auto& [x, w] : other.points_) detail::add_to(points_, x, w);
    for (const auto& [c, w] : other.left_limits_) detail::add_to(left_limits_, c, w);
    densities_ = detail::combine(densities_, other.densities_, [](const Rational& x, const Rational& y) { return Rational(x + y); });
    return *this;
  }

  Charge& operator*=(const Rational& scale) {
    if (scale == 0) return *this = Charge();
    for (auto& kv : points_) kv.second *= scale;
    for (auto& kv : left_limits_) kv.second *= scale;
    for (auto& p : densities_) p.coefficient *= scale;
    return *this;
  }

  friend Charge operator+(Charge a, const Charge& b) { return a += b; }
  friend Charge operator*(const Rational& s, Charge a) { return a *= s; }
  friend Charge operator-(Charge a, const Charge& b) { return a += Rational(-1) * b; }

  friend bool operator==(const Charge& a, const Charge& b) {
    return a.points_ == b.points_ && a.left_limits_ == b.left_limits_ && a.densities_ == b.densities_;
  }

 private:
  friend Charge make_charge(std::map<Rational, Rational>, detail::Pieces, std::map<Rational, Rational>);

  std::map<Rational, Rational> points_;
  std::map<Rational, Rational> left_limits_;
  std::vector<DensityPiece> densities_;
};

// Assembles a charge from already-normalized parts (zero entries are dropped).
inline Charge make_charge(std::map<Rational, Rational> points, detail::Pieces densities,
                          std::map<Rational, Rational> left_limits) {
  std::erase_if(points, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(left_limits, [](const auto& kv) { return kv.second == 0; });
  Charge out;
  out.points_ = std::move(points);
  out.left_limits_ = std::move(left_limits);
  out.densities_ = detail::normalize(std::move(densities));
  return out;
}

inline Rational evaluate(const Charge& mu, const CanonicalSet& a) {
  Rational total = 0;
  for (const auto& [x, w] : mu.point_masses())
    if (detail::member(a, x)) total += w;
  for (const auto& p : mu.densities()) total += p.coefficient * intersection_length(a, p.interval);
  for (const auto& [c, w] : mu.left_limits())
    if (left_neighborhood(a, c)) total += w;
  return total;
}

inline Rational total_mass(const Charge& mu) { return evaluate(mu, CanonicalSet::whole()); }

inline Charge linear_combine(std::span<const Rational> coefficients, std::span<const Charge> charges) {
  if (coefficients.size() != charges.size())
    throw Malformed("linear_combine: " + std::to_string(coefficients.size()) + " coefficients for " +
                    std::to_string(charges.size()) + " charges");
  Charge out;
  for (std::size_t i = 0; i < charges.size(); ++i) out += coefficients[i] * charges[i];
  return out;
}

struct TotalVariation {
  Charge charge;  // |μ|
  Rational norm;  // ‖μ‖ = |μ|(Ω)
};

inline Charge abs(const Charge& mu) {
  auto points = mu.point_masses();
  auto lefts = mu.left_limits();
  auto dens = mu.densities();
  for (auto& kv : points) kv.second = abs_value(kv.second);
  for (auto& kv : lefts) kv.second = abs_value(kv.second);
  for (auto& p : dens) p.coefficient = abs_value(p.coefficient);
  return make_charge(std::move(points), std::move(dens), std::move(lefts));
}

inline TotalVariation total_variation(const Charge& mu) {
  Charge magnitude = abs(mu);
  Rational norm = total_mass(magnitude);
  return {std::move(magnitude), std::move(norm)};
}

inline Rational norm(const Charge& mu) { return total_variation(mu).norm; }

inline void require_positive(const Charge& mu, const char* who) {
  if (!mu.is_positive()) throw NotPositive(std::string(who) + ": charge has a negative coefficient");
}

/// Lattice meet of two positive charges.
inline Charge meet(const Charge& mu, const Charge& nu) {
  require_positive(mu, "meet");
  require_positive(nu, "meet");
  auto keyed_min = [](const std::map<Rational, Rational>& a, const std::map<Rational, Rational>& b) {
    std::map<Rational, Rational> out;
    for (const auto& [k, w] : a) {
      auto it = b.find(k);
      if (it != b.end()) out.emplace(k, min_of(w, it->second));
    }
    return out;
  };
  return make_charge(keyed_min(mu.point_masses(), nu.point_masses()),
                     detail::combine(mu.densities(), nu.densities(),
                                     [](const Rational& x, const Rational& y) { return Rational(min_of(x, y)); }),
                     keyed_min(mu.left_limits(), nu.left_limits()));
}

/// The primitive keys carried by a charge. Absolute continuity and
/// singularity depend on a charge only through its support.
struct Support {
  std::set<Rational> points;
  std::set<Rational> left_limits;
  CanonicalSet density;

  bool covers(const Support& other) const {
    return std::includes(points.begin(), points.end(), other.points.begin(), other.points.end()) &&
           std::includes(left_limits.begin(), left_limits.end(), other.left_limits.begin(), other.left_limits.end()) &&
           is_subset(other.density, density);
  }

  Support& operator|=(const Support& other) {
    points.insert(other.points.begin(), other.points.end());
    left_limits.insert(other.left_limits.begin(), other.left_limits.end());
    density = set_union(density, other.density);
    return *this;
  }

  friend bool operator==(const Support& a, const Support& b) {
    return a.points == b.points && a.left_limits == b.left_limits && a.density == b.density;
  }
};

inline Support support(const Charge& mu) {
  Support s;
  for (const auto& kv : mu.point_masses()) s.points.insert(kv.first);
  for (const auto& kv : mu.left_limits()) s.left_limits.insert(kv.first);
  s.density = mu.density_support();
  return s;
}

/// Decides μ ≪ ν (on |μ|, |ν|): every key of μ is a key of ν and μ's density
/// support lies inside ν's.
inline bool abs_continuous(const Charge& mu, const Charge& nu) { return support(nu).covers(support(mu)); }

/// A family A_k (k = 1, 2, ...) with |ν|(A_k) → 0 while |μ|(A_k) stays
/// bounded away from 0, witnessing that μ ≪ ν fails.
struct ContinuityWitness {
  enum class Shape { right_of_point, left_of_limit, fixed_interval };

  Shape shape;
  Rational anchor;  // point-mass or left-limit location, or left end of the fixed interval
  Rational radius;  // A_1 width

  CanonicalSet at(unsigned k) const {
    const Rational width = radius / k;
    switch (shape) {
      case Shape::right_of_point: return CanonicalSet::interval(anchor, anchor + width);
      case Shape::left_of_limit: return CanonicalSet::interval(anchor - width, anchor);
      case Shape::fixed_interval: return CanonicalSet::interval(anchor, anchor + radius);
    }
    return {};
  }
};

namespace detail {

// All atomic locations and density endpoints, plus 0 and 1.
inline std::vector<Rational> landmarks(std::initializer_list<const Charge*> charges) {
  std::vector<Rational> pts{Rational(0), Rational(1)};
  for (const auto* c : charges) {
    for (const auto& kv : c->point_masses()) pts.push_back(kv.first);
    for (const auto& kv : c->left_limits()) pts.push_back(kv.first);
    for (const auto& p : c->densities()) {
      pts.push_back(p.interval.lo);
      pts.push_back(p.interval.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline Rational min_gap(const std::vector<Rational>& sorted) {
  Rational gap = 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gap = min_of(gap, sorted[i + 1] - sorted[i]);
  return gap;
}

}  // namespace detail

inline std::optional<ContinuityWitness> continuity_witness(const Charge& mu, const Charge& nu) {
  const Support sm = support(mu);
  const Support sn = support(nu);
  const Rational radius = detail::min_gap(detail::landmarks({&mu, &nu})) / 2;
  for (const auto& x : sm.points)
    if (!sn.points.contains(x)) return ContinuityWitness{ContinuityWitness::Shape::right_of_point, x, radius};
  for (const auto& c : sm.left_limits)
    if (!sn.left_limits.contains(c)) return ContinuityWitness{ContinuityWitness::Shape::left_of_limit, c, radius};
  const CanonicalSet uncovered = set_difference(sm.density, sn.density);
  if (uncovered.empty()) return std::nullopt;
  // A sub-interval of the uncovered region strictly between landmarks carries
  // no mass of ν at all.
  const auto marks = detail::landmarks({&mu, &nu});
  const Interval& iv = uncovered.intervals().front();
  auto next = std::upper_bound(marks.begin(), marks.end(), iv.lo);
  const Rational hi = next == marks.end() ? iv.hi : min_of(iv.hi, *next);
  const Rational width = (hi - iv.lo) / 2;
  return ContinuityWitness{ContinuityWitness::Shape::fixed_interval, iv.lo + width / 2, width};
}

inline bool singular(const Charge& mu, const Charge& nu) { return meet(abs(mu), abs(nu)).is_zero(); }

/// For singular μ, ν returns B with |μ|(Bᶜ) + |ν|(B) < eps, built from small
/// capture intervals at the primitive locations. nullopt when not singular.
inline std::optional<CanonicalSet> splitting_set(const Charge& mu, const Charge& nu, const Rational& eps) {
  if (!(eps > 0)) throw BadInput("splitting_set: eps must be positive");
  if (!singular(mu, nu)) return std::nullopt;
  const Charge am = abs(mu);
  const Charge an = abs(nu);
  Rational r = detail::min_gap(detail::landmarks({&mu, &nu})) / 2;
  auto captures = [](const Charge& c, const Rational& radius) {
    std::vector<Interval> ivs;
    for (const auto& kv : c.point_masses()) ivs.push_back(Interval{kv.first, kv.first + radius});
    for (const auto& kv : c.left_limits()) ivs.push_back(Interval{kv.first - radius, kv.first});
    return canonicalize(std::move(ivs));
  };
  for (;;) {
    CanonicalSet b = set_difference(set_union(captures(am, r), am.density_support()), captures(an, r));
    if (evaluate(am, complement(b)) + evaluate(an, b) < eps) return b;
    r /= 2;
  }
}

/// Piecewise-constant function on Ω given by a partition into algebra sets.
class SimpleFunction {
 public:
  struct Piece {
    CanonicalSet set;
    Rational value;
  };

  /// Pieces must be pairwise disjoint and cover Ω. Empty pieces are ignored.
  explicit SimpleFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    std::erase_if(pieces_, [](const Piece& p) { return p.set.empty(); });
    CanonicalSet covered;
    Rational total = 0;
    for (const auto& p : pieces_) {
      covered = set_union(covered, p.set);
      total += p.set.length();
    }
    if (total != 1 || !(covered == CanonicalSet::whole()))
      throw Malformed("simple function pieces must be disjoint and cover [0,1)");
  }

  static SimpleFunction constant(const Rational& v) { return SimpleFunction({Piece{CanonicalSet::whole(), v}}); }

  /// value_in on a, value_out on its complement.
  static SimpleFunction indicator(const CanonicalSet& a, const Rational& value_in = 1, const Rational& value_out = 0) {
    return SimpleFunction({Piece{a, value_in}, Piece{complement(a), value_out}});
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

  Rational value_at(const Rational& x) const {
    for (const auto& p : pieces_)
      if (contains_point(p.set, x)) return p.value;
    return 0;
  }

  /// The value f takes on (c-ε, c) for small ε.
  Rational left_limit(const Rational& c) const {
    for (const auto& p : pieces_)
      if (left_neighborhood(p.set, c)) return p.value;
    return 0;
  }

  /// f·1_A.
  SimpleFunction restricted(const CanonicalSet& a) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) out.push_back(Piece{set_intersection(p.set, a), p.value});
    out.push_back(Piece{complement(a), 0});
    return SimpleFunction(std::move(out));
  }

 private:
  std::vector<Piece> pieces_;
};

/// μ(f) = Σ value · μ(piece).
inline Rational integrate_simple(const Charge& mu, const SimpleFunction& f) {
  Rational total = 0;
  for (const auto& p : f.pieces()) total += p.value * evaluate(mu, p.set);
  return total;
}

/// μ_f with μ_f(A) = μ(f·1_A). Left limits take the left-limit value of f.
inline Charge density_transform(const Charge& mu, const SimpleFunction& f) {
  std::map<Rational, Rational> points;
  for (const auto& [x, w] : mu.point_masses()) points.emplace(x, w * f.value_at(x));
  std::map<Rational, Rational> lefts;
  for (const auto& [c, w] : mu.left_limits()) lefts.emplace(c, w * f.left_limit(c));
  detail::Pieces dens;
  for (const auto& piece : f.pieces()) {
    for (auto p : detail::restrict_pieces(mu.densities(), piece.set)) {
      p.coefficient *= piece.value;
      dens.push_back(std::move(p));
    }
  }
  std::sort(dens.begin(), dens.end(), [](const DensityPiece& x, const DensityPiece& y) { return x.interval.lo < y.interval.lo; });
  return make_charge(std::move(points), std::move(dens), std::move(lefts));
}

}  // namespace chargekit
