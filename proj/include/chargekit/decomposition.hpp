#pragma once

// Aggregates Σ α_n |μ_n| / (1 ∨ ‖μ_n‖) of a charge family and the
// generalized Lebesgue decomposition λ = λ^c + λ^⊥ relative to the family.

#include <optional>
#include <utility>
#include <vector>

#include "chargekit/charge.hpp"
#include "chargekit/errors.hpp"

namespace chargekit {

struct ChargeFamily {
  std::vector<Charge> members;
  /// Strictly positive, summing to 1. Defaults to 2^-1, 2^-2, ..., with the
  /// last weight doubled so the total is exactly 1.
  std::optional<std::vector<Rational>> weights;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

inline std::vector<Rational> default_weights(std::size_t count) {
  std::vector<Rational> w;
  for (std::size_t n = 1; n < count; ++n) w.push_back(inverse_power_of_two(static_cast<unsigned>(n)));
  if (count > 0) w.push_back(inverse_power_of_two(static_cast<unsigned>(count - 1)));
  return w;
}

inline std::vector<Rational> effective_weights(const ChargeFamily& family) {
  if (!family.weights) return default_weights(family.size());
  const auto& w = *family.weights;
  if (w.size() != family.size())
    throw Malformed("family has " + std::to_string(family.size()) + " members but " + std::to_string(w.size()) + " weights");
  Rational total = 0;
  for (const auto& a : w) {
    if (!(a > 0)) throw Malformed("family weights must be strictly positive");
    total += a;
  }
  if (total != 1) throw Malformed("family weights sum to " + to_string(total) + ", not 1");
  return w;
}

/// The member of A(M) with the family's weights.
inline Charge aggregate(const ChargeFamily& family) {
  if (family.empty()) throw EmptyFamily("aggregate of an empty family");
  const auto weights = effective_weights(family);
  Charge out;
  for (std::size_t n = 0; n < family.size(); ++n) {
    auto [magnitude, total] = total_variation(family.members[n]);
    out += (weights[n] / max_of(Rational(1), total)) * magnitude;
  }
  return out;
}

/// ν ∈ L(M). L(∅) = {0}.
inline bool in_L(const Charge& nu, const ChargeFamily& family) {
  if (family.empty()) return nu.is_zero();
  return abs_continuous(nu, aggregate(family));
}

struct Decomposition {
  Charge continuous_part;  // λ^c ∈ L(M)
  Charge singular_part;    // λ^⊥ ⊥ A(M)
  Charge aggregate;        // the m ∈ A(M) witnessing λ^c ≪ m (zero for empty M)
};

inline Decomposition lebesgue_decompose(const Charge& lambda, const ChargeFamily& family) {
  if (family.empty()) return Decomposition{Charge(), lambda, Charge()};
  Charge m = aggregate(family);
  const Support s = support(m);

  std::map<Rational, Rational> points_c, points_s, lefts_c, lefts_s;
  for (const auto& [x, w] : lambda.point_masses()) (s.points.contains(x) ? points_c : points_s).emplace(x, w);
  for (const auto& [c, w] : lambda.left_limits()) (s.left_limits.contains(c) ? lefts_c : lefts_s).emplace(c, w);
  auto dens_c = detail::restrict_pieces(lambda.densities(), s.density);
  auto dens_s = detail::restrict_pieces(lambda.densities(), complement(s.density));

  return Decomposition{make_charge(std::move(points_c), std::move(dens_c), std::move(lefts_c)),
                       make_charge(std::move(points_s), std::move(dens_s), std::move(lefts_s)), std::move(m)};
}

}  // namespace chargekit
