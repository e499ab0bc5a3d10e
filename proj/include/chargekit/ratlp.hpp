#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// Every outcome carries a certificate that check_certificate re-verifies
// using only the original program.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chargekit/errors.hpp"
#include "chargekit/rational.hpp"

namespace chargekit::lp {

enum class Relation { less_equal, equal, greater_equal };
enum class Bound { nonnegative, free };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

/// maximize objective·x subject to the constraints and variable bounds.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<Bound> bounds;  // empty means every variable is nonnegative

  std::size_t variables() const { return objective.size(); }
  Bound bound(std::size_t j) const { return bounds.empty() ? Bound::nonnegative : bounds[j]; }
};

enum class Status { optimal, infeasible, unbounded };

using chargekit::to_string;

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

struct Outcome {
  Status status = Status::optimal;
  std::vector<Rational> solution;  // optimal point, or a feasible point when unbounded
  Rational value;                  // objective at `solution`
  std::vector<Rational> dual;      // dual optimum, or Farkas multipliers when infeasible
  std::vector<Rational> ray;       // improving direction when unbounded
};

inline void validate(const LinearProgram& p) {
  const std::size_t n = p.variables();
  if (!p.bounds.empty() && p.bounds.size() != n)
    throw Malformed("program has " + std::to_string(n) + " variables but " + std::to_string(p.bounds.size()) + " bounds");
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    if (p.constraints[i].coefficients.size() != n)
      throw Malformed("constraint " + std::to_string(i) + " has " + std::to_string(p.constraints[i].coefficients.size()) +
                      " coefficients, expected " + std::to_string(n));
}

namespace detail {

using Matrix = std::vector<std::vector<Rational>>;

// Solves M^T y = rhs for square nonsingular M.
inline std::vector<Rational> solve_transposed(const Matrix& m, const std::vector<Rational>& rhs) {
  const std::size_t k = rhs.size();
  Matrix a(k, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = m[c][r];
    a[r][k] = rhs[r];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && a[piv][col] == 0) ++piv;
    if (piv == k) throw Error("simplex basis is singular");
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Rational> y(k);
  for (std::size_t r = 0; r < k; ++r) y[r] = a[r][k] / a[r][r];
  return y;
}

class Tableau {
 public:
  // Rows of [A' | b'] with b' >= 0 and a feasible starting basis.
  Tableau(Matrix rows, std::vector<std::size_t> basis) : rows_(std::move(rows)), basis_(std::move(basis)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t columns() const { return rows_.empty() ? 0 : rows_.front().size() - 1; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const Rational& rhs(std::size_t i) const { return rows_[i].back(); }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational factor = rows_[i][c];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= factor * rows_[r][j];
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  struct Result {
    bool unbounded = false;
    std::size_t entering = 0;
  };

  // Maximizes cost·x over columns in `allowed` (Bland's rule).
  Result maximize(const std::vector<Rational>& cost, const std::vector<bool>& allowed, std::size_t width) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < width && !enter; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) reduced -= cost[basis_[i]] * rows_[i][j];
        if (reduced > 0) enter = j;
      }
      if (!enter) return {};
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!(rows_[i][*enter] > 0)) continue;
        Rational ratio = rows_[i].back() / rows_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          best = std::move(ratio);
          leave = i;
        }
      }
      if (!leave) return {true, *enter};
      pivot(*leave, *enter);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  std::vector<Rational> point(std::size_t width) const {
    std::vector<Rational> x(width);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i].back();
    return x;
  }

 private:
  Matrix rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Outcome solve_lp(const LinearProgram& p) {
  validate(p);
  const std::size_t n = p.variables();
  const std::size_t m = p.constraints.size();

  // Structural columns: x_j = x⁺ - x⁻ for free variables.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t width = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = width++;
    if (p.bound(j) == Bound::free) neg_col[j] = width++;
  }

  std::vector<int> sign(m, 1);
  std::vector<Relation> rel(m);
  std::vector<std::optional<std::size_t>> slack_col(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    sign[i] = c.rhs < 0 ? -1 : 1;
    rel[i] = c.relation;
    if (sign[i] < 0 && rel[i] != Relation::equal)
      rel[i] = rel[i] == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    if (rel[i] != Relation::equal) slack_col[i] = width++;
  }
  const std::size_t artificial_begin = width;
  std::vector<std::optional<std::size_t>> art_col(m);
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::less_equal) art_col[i] = width++;

  detail::Matrix original(m, std::vector<Rational>(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    const Rational s(sign[i]);
    for (std::size_t j = 0; j < n; ++j) {
      original[i][pos_col[j]] = s * c.coefficients[j];
      if (neg_col[j] != SIZE_MAX) original[i][neg_col[j]] = -s * c.coefficients[j];
    }
    if (slack_col[i]) original[i][*slack_col[i]] = rel[i] == Relation::less_equal ? 1 : -1;
    if (art_col[i]) original[i][*art_col[i]] = 1;
    original[i][width] = s * c.rhs;
    basis[i] = art_col[i] ? *art_col[i] : *slack_col[i];
  }

  auto to_original = [&](const std::vector<Rational>& z) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = z[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) x[j] -= z[neg_col[j]];
    }
    return x;
  };
  auto duals = [&](const detail::Tableau& t, const std::vector<std::size_t>& row_ids, const std::vector<Rational>& cost) {
    detail::Matrix b(t.rows(), std::vector<Rational>(t.rows()));
    std::vector<Rational> cb(t.rows());
    for (std::size_t k = 0; k < t.rows(); ++k) {
      for (std::size_t r = 0; r < t.rows(); ++r) b[r][k] = original[row_ids[r]][t.basis()[k]];
      cb[k] = cost[t.basis()[k]];
    }
    const auto reduced = detail::solve_transposed(b, cb);
    std::vector<Rational> y(m);
    for (std::size_t r = 0; r < row_ids.size(); ++r) y[row_ids[r]] = Rational(sign[row_ids[r]]) * reduced[r];
    return y;
  };

  detail::Tableau tab(original, basis);
  std::vector<std::size_t> row_ids(m);
  for (std::size_t i = 0; i < m; ++i) row_ids[i] = i;

  // Phase 1: maximize -Σ artificials.
  std::vector<Rational> phase1(width, 0);
  for (std::size_t j = artificial_begin; j < width; ++j) phase1[j] = -1;
  std::vector<bool> allowed(width, true);
  tab.maximize(phase1, allowed, width);
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] >= artificial_begin) infeasibility += tab.rhs(i);
  if (infeasibility > 0) {
    Outcome out;
    out.status = Status::infeasible;
    out.dual = duals(tab, row_ids, phase1);
    return out;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < artificial_begin) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < artificial_begin && !col; ++j)
      if (tab.at(i, j) != 0) col = j;
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.erase_row(i);
      row_ids.erase(row_ids.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  std::vector<Rational> cost(width, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = p.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -p.objective[j];
  }
  for (std::size_t j = artificial_begin; j < width; ++j) allowed[j] = false;
  const auto result = tab.maximize(cost, allowed, width);

  Outcome out;
  const auto z = tab.point(width);
  out.solution = to_original(z);
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) out.value += p.objective[j] * out.solution[j];
  if (result.unbounded) {
    std::vector<Rational> d(width, 0);
    d[result.entering] = 1;
    for (std::size_t i = 0; i < tab.rows(); ++i) d[tab.basis()[i]] = -tab.at(i, result.entering);
    out.status = Status::unbounded;
    out.ray = to_original(d);
    return out;
  }
  out.status = Status::optimal;
  out.dual = duals(tab, row_ids, cost);
  return out;
}

namespace detail {

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::less_equal: return lhs <= rhs;
    case Relation::equal: return lhs == rhs;
    case Relation::greater_equal: return lhs >= rhs;
  }
  return false;
}

inline bool feasible(const LinearProgram& p, const std::vector<Rational>& x) {
  if (x.size() != p.variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (p.bound(j) == Bound::nonnegative && x[j] < 0) return false;
  for (const auto& c : p.constraints)
    if (!satisfies(dot(c.coefficients, x), c.relation, c.rhs)) return false;
  return true;
}

// Multipliers with the dual sign pattern: >= 0 on <= rows, <= 0 on >= rows.
inline bool dual_signs(const LinearProgram& p, const std::vector<Rational>& y) {
  if (y.size() != p.constraints.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (p.constraints[i].relation == Relation::less_equal && y[i] < 0) return false;
    if (p.constraints[i].relation == Relation::greater_equal && y[i] > 0) return false;
  }
  return true;
}

inline std::vector<Rational> transpose_times(const LinearProgram& p, const std::vector<Rational>& y) {
  std::vector<Rational> s(p.variables(), 0);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += p.constraints[i].coefficients[j] * y[i];
  return s;
}

}  // namespace detail

/// Re-verifies an outcome's certificate in exact arithmetic, independently of
/// how it was produced.
inline bool check_certificate(const LinearProgram& p, const Outcome& o) {
  try {
    validate(p);
  } catch (const Malformed&) {
    return false;
  }
  const std::size_t n = p.variables();
  switch (o.status) {
    case Status::optimal: {
      if (!detail::feasible(p, o.solution) || !detail::dual_signs(p, o.dual)) return false;
      const auto s = detail::transpose_times(p, o.dual);
      for (std::size_t j = 0; j < n; ++j) {
        if (p.bound(j) == Bound::nonnegative ? s[j] < p.objective[j] : s[j] != p.objective[j]) return false;
      }
      Rational dual_value = 0;
      for (std::size_t i = 0; i < o.dual.size(); ++i) dual_value += p.constraints[i].rhs * o.dual[i];
      return detail::dot(p.objective, o.solution) == o.value && dual_value == o.value;
    }
    case Status::infeasible: {
      if (!detail::dual_signs(p, o.dual)) return false;
      const auto s = detail::transpose_times(p, o.dual);
      for (std::size_t j = 0; j < n; ++j) {
        if (p.bound(j) == Bound::nonnegative ? s[j] < 0 : s[j] != 0) return false;
      }
      Rational rhs_value = 0;
      for (std::size_t i = 0; i < o.dual.size(); ++i) rhs_value += p.constraints[i].rhs * o.dual[i];
      return rhs_value < 0;
    }
    case Status::unbounded: {
      if (!detail::feasible(p, o.solution) || o.ray.size() != n) return false;
      for (std::size_t j = 0; j < n; ++j)
        if (p.bound(j) == Bound::nonnegative && o.ray[j] < 0) return false;
      for (const auto& c : p.constraints)
        if (!detail::satisfies(detail::dot(c.coefficients, o.ray), c.relation, Rational(0))) return false;
      return detail::dot(p.objective, o.ray) > 0;
    }
  }
  return false;
}

}  // namespace chargekit::lp
