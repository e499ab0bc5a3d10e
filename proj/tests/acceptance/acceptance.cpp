// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion ...]   (no arguments runs all nine)

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chargekit/chargekit.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace chargekit;
namespace oracle = testkit::oracle;
namespace fs = std::filesystem;

namespace {

/// Counts checks and keeps the first few failure descriptions.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what());
  }
  void note(std::string text) { summary_ = std::move(text); }

  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::string& summary() const { return summary_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string summary_;
  std::vector<std::string> notes_;
};

Rational q(const char* s) { return *parse_rational(s); }

std::string fixture(const char* name) { return std::string(CHARGEKIT_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Term> terms_of(const Charge& mu) { return mu.terms(); }

CanonicalSet span(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) return CanonicalSet();
  return canonicalize({Interval{lo, hi}});
}

Rational oracle_mass(const std::vector<Term>& terms, const CanonicalSet& a) { return oracle::evaluate(terms, oracle::raw(a)); }

bool has_left_limits(const std::vector<Term>& terms) {
  return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.primitive.kind() == PrimitiveKind::left_limit; });
}

// ---- 1 ---------------------------------------------------------------------

void decomposition_suite(Tally& t) {
  testkit::Gen gen(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    testkit::Gen::ChargeShape shape;
    shape.positive = trial % 2 == 0;
    shape.left_limits = trial % 3 != 0;
    const auto lambda_terms = gen.terms(shape);
    const Charge lambda = Charge::from_terms(lambda_terms);

    ChargeFamily family;
    std::vector<std::vector<Term>> member_terms;
    for (int k = gen.integer(1, 4); k > 0; --k) {
      member_terms.push_back(gen.terms(testkit::Gen::ChargeShape{}));
      family.members.push_back(Charge::from_terms(member_terms.back()));
    }
    const auto d = lebesgue_decompose(lambda, family);
    const auto label = [&] { return "case " + std::to_string(trial) + ": lambda " + text::describe_charge(lambda); };

    t.check(d.continuous_part + d.singular_part == lambda, label);
    t.check(oracle::abs_continuous(terms_of(d.continuous_part), terms_of(d.aggregate)), label);
    for (const auto& mu : member_terms) {
      t.check(oracle::singular(terms_of(d.singular_part), mu), label);
      t.check(oracle::abs_continuous(mu, terms_of(d.aggregate)), label);
    }

    ChargeFamily shuffled = family;
    std::shuffle(shuffled.members.begin(), shuffled.members.end(), gen.engine());
    std::vector<Rational> raw_weights;
    Rational total = 0;
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
      raw_weights.push_back(gen.integer(1, 9));
      total += raw_weights.back();
    }
    for (auto& w : raw_weights) w /= total;
    shuffled.weights = raw_weights;
    const auto e = lebesgue_decompose(lambda, shuffled);
    t.check(e.continuous_part == d.continuous_part && e.singular_part == d.singular_part, label);

    if (shape.positive) {
      t.check(d.continuous_part.is_zero() || d.continuous_part.is_positive(), label);
      t.check(d.singular_part.is_zero() || d.singular_part.is_positive(), label);
    }
    if (!has_left_limits(lambda_terms)) {
      t.check(d.continuous_part.is_countably_additive() && d.singular_part.is_countably_additive(), label);
    }
  }
  t.note("1000 cases");
}

// ---- 2 ---------------------------------------------------------------------

std::vector<Term> absolute_sum(const std::vector<Charge>& members, const std::vector<std::size_t>& idx) {
  std::vector<Term> out;
  for (auto i : idx)
    for (const auto& term : abs(members[i]).terms()) out.push_back(term);
  return out;
}

void domination_suite(Tally& t) {
  testkit::Gen gen(2002);
  int pivots = 0;
  for (int trial = 0; trial < 500; ++trial) {
    ChargeFamily family;
    std::vector<std::vector<Term>> member_terms;
    for (int k = gen.integer(1, 6); k > 0; --k) {
      member_terms.push_back(gen.terms(testkit::Gen::ChargeShape{}));
      family.members.push_back(Charge::from_terms(member_terms.back()));
    }
    const bool with_pivot = trial % 5 < 2;
    std::optional<Charge> lambda;
    if (with_pivot) {
      Charge l = gen.charge(testkit::Gen::ChargeShape{});
      // Half of the pivots dominate part of the family by construction.
      if (trial % 2 == 0)
        for (const auto& mu : family.members)
          if (gen.coin()) l += abs(mu);
      lambda = l;
      ++pivots;
    }
    const auto r = dominate(family, lambda);
    const auto label = [&] { return "family " + std::to_string(trial); };

    const auto m_terms = terms_of(r.dominating);
    for (std::size_t i = 0; i < member_terms.size(); ++i) {
      t.check(oracle::abs_continuous(member_terms[i], m_terms), label);
      t.check(r.per_member[i], label);
    }

    std::vector<std::size_t> everyone(family.size());
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});
    const auto full = absolute_sum(family.members, everyone);
    const auto sub = absolute_sum(family.members, r.equivalent_subfamily);
    t.check(support(Charge::from_terms(sub)) == support(Charge::from_terms(full)), label);
    t.check(oracle::abs_continuous(full, sub) && oracle::abs_continuous(sub, full), label);

    if (lambda) {
      const auto continuous = lebesgue_decompose(*lambda, family).continuous_part;
      t.check(r.pivot && r.pivot->holds(), label);
      for (const auto& mu : member_terms) {
        t.check(oracle::abs_continuous(mu, terms_of(*lambda)) == oracle::abs_continuous(mu, terms_of(continuous)), label);
      }
    }
  }
  t.note("500 families, " + std::to_string(pivots) + " pivots");
}

// ---- 3 ---------------------------------------------------------------------

void exhaustion_suite(Tally& t) {
  testkit::Gen gen(3003);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lambda_terms = gen.terms(testkit::Gen::ChargeShape{8, true});
    const Charge lambda = Charge::from_terms(lambda_terms);
    std::vector<oracle::Raw> raws;
    std::vector<CanonicalSet> sets;
    for (int k = gen.integer(1, 40); k > 0; --k) {
      raws.push_back(gen.raw_set(3));
      sets.push_back(canonicalize(raws.back()));
    }
    const auto trace = exhaust(lambda, sets);
    const auto label = [&] { return "case " + std::to_string(trial); };

    // Every H is a union of elementary cells, so gains are sums of cell masses.
    const auto cells = oracle::elementary_cells(raws);
    std::vector<Rational> cell_mass;
    std::vector<std::vector<bool>> inside(sets.size());
    for (const auto& c : cells) cell_mass.push_back(oracle::evaluate(lambda_terms, {c}));
    for (std::size_t i = 0; i < raws.size(); ++i)
      for (const auto& c : cells) inside[i].push_back(oracle::member(raws[i], c.lo));

    std::vector<bool> covered(cells.size(), false);
    auto residual = [&] {
      Rational r = 0;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        bool in_union = false;
        for (const auto& row : inside) in_union = in_union || row[c];
        if (in_union && !covered[c]) r += cell_mass[c];
      }
      return r;
    };
    t.check(trace.initial_residual == residual(), label);
    t.check(trace.residuals.size() <= sets.size(), label);
    t.check(trace.final_residual() == 0, label);

    Rational previous = trace.initial_residual;
    for (std::size_t step = 0; step < trace.chosen_index.size(); ++step) {
      std::vector<Rational> gains(sets.size(), Rational(0));
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t c = 0; c < cells.size(); ++c)
          if (inside[i][c] && !covered[c]) gains[i] += cell_mass[c];
      const auto best = std::max_element(gains.begin(), gains.end());
      const auto expected = static_cast<std::size_t>(best - gains.begin());
      const std::size_t picked = trace.chosen_index[step];
      t.check(*best > 0, label);
      t.check(picked == expected, label);
      t.check(previous - trace.residuals[step] == gains[picked], label);
      t.check(trace.residuals[step] <= previous, label);
      for (std::size_t c = 0; c < cells.size(); ++c) covered[c] = covered[c] || inside[picked][c];
      t.check(trace.residuals[step] == residual(), label);
      previous = trace.residuals[step];
    }
    // After the last step no set adds mass.
    for (std::size_t i = 0; i < sets.size(); ++i) {
      Rational gain = 0;
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (inside[i][c] && !covered[c]) gain += cell_mass[c];
      t.check(gain == 0, label);
    }
  }
  t.note("300 cases");
}

// ---- 4 ---------------------------------------------------------------------

void left_limit_witness(Tally& t) {
  testkit::Gen gen(4004);
  std::set<Rational> seen;
  while (seen.size() < 20) {
    const Rational c = gen.limit_point();
    if (!seen.insert(c).second) continue;
    const Charge lambda = Charge::left_limit(c);
    const std::vector<Term> lambda_terms{Term{Primitive::left_limit(c), Rational(1)}};
    const auto label = [&] { return "c = " + to_string(c); };

    // A_n = [c - 1/n, c - 1/(n+1)) ∩ Ω: a clipped head, then an unclipped tail.
    unsigned long first = 1;
    while (c - Rational(1, first) < 0) ++first;
    SetSequence seq;
    for (unsigned long n = 1; n < first; ++n) {
      seq.head.push_back(span(std::max(Rational(0), Rational(c - Rational(1, n))), c - Rational(1, n + 1)));
    }
    seq.tail = HarmonicTail{c, Rational(1), first};
    t.check(seq.tail->hull().lo >= 0, label);

    CanonicalSet covered;
    for (const auto& a : seq.head) {
      t.check(set_intersection(covered, a).empty(), label);
      covered = set_union(covered, a);
      t.check(oracle_mass(lambda_terms, a) == 0, label);
    }
    covered = set_union(covered, span(seq.tail->hull().lo, seq.tail->hull().hi));
    t.check(covered == span(0, c), label);
    for (unsigned long n = first; n < first + 200; ++n) {
      const auto piece = seq.tail->piece(n);
      t.check(oracle::evaluate(lambda_terms, {piece}) == 0, label);
    }
    t.check(oracle_mass(lambda_terms, span(0, c)) == 1, label);

    const auto defects = verify_sigma_additivity(lambda, seq, {ExtendedSet::whole(), ExtendedSet::from_algebra(span(0, c))});
    for (const auto& d : defects) {
      t.check(d.measure == 1, label);
      t.check(d.series == 0, label);
      t.check(d.defect == 1, label);
    }
  }
  t.note("20 values of c");
}

// ---- 5 ---------------------------------------------------------------------

void completion_suite(Tally& t) {
  testkit::Gen gen(5005);
  int members = 0;
  int sampled = 0;
  while (members < 300) {
    ++sampled;
    const auto lambda_terms = gen.terms(testkit::Gen::ChargeShape{6, true});
    const Charge lambda = Charge::from_terms(lambda_terms);
    const auto b = gen.extended_set(3);
    const auto s = completion_status(lambda, b);
    const auto o = oracle::inner_outer(lambda_terms, b);
    const auto label = [&] { return "lambda " + text::describe_charge(lambda) + ", B " + text::format_extended_set(b); };
    t.check(s.inner <= s.outer, label);
    t.check(s.inner == o.inner && s.outer == o.outer, label);
    if (!s.member()) continue;
    ++members;
    const auto c = completion_status(lambda, complement(b));
    t.check(c.member(), label);
    t.check(completed_measure(lambda, b) + completed_measure(lambda, complement(b)) == oracle_mass(lambda_terms, CanonicalSet::whole()),
            label);
  }

  const Charge failing = text::parse_charge(slurp(fixture("failing_lambda.ch")));
  t.check(failing == Charge::density(0, 1) + Charge::left_limit(1), [] { return std::string("failing_lambda.ch contents"); });
  const auto seq = text::parse_sequence(slurp(fixture("failing.seq")));
  const auto bad = verify_sigma_additivity(failing, seq, {ExtendedSet::whole()});
  t.check(bad.size() == 1 && bad[0].defect == 1, [] { return std::string("failing.seq defect"); });

  const auto tests = text::parse_extended_set_list(slurp(fixture("completion_tests.txt")));
  const auto good = verify_sigma_additivity(failing, completion_sequence(failing), tests);
  t.check(good.size() == tests.size() && all_zero(good), [] { return std::string("completion_sequence defect"); });
  t.note(std::to_string(members) + " member sets of " + std::to_string(sampled) + " sampled, " + std::to_string(tests.size()) +
         " fixture tests");
}

// ---- 6 ---------------------------------------------------------------------

void yan_suite(Tally& t) {
  testkit::Gen gen(6006);
  int found = 0;
  int per_mode[2] = {0, 0};
  for (int trial = 0; trial < 600; ++trial) {
    auto m = gen.yan_model(6, 5);
    m.mode = trial % 2 == 0 ? yan::Mode::cone : yan::Mode::hull;
    ++per_mode[trial % 2];
    const auto s = yan::find_certificate(m);
    const auto c = yan::check_condition_ii(m);
    const auto label = [&] { return yan::format_model(m); };
    t.check(s.found() == c.holds, label);
    if (s.found()) {
      ++found;
      t.check(yan::verify_certificate(m, *s.certificate), label);
    } else {
      t.check(s.witness && c.witness && *s.witness == *c.witness, label);
    }
  }

  const auto balanced = text::parse_yan_model(slurp(fixture("cone_balanced.yan")));
  const auto b = yan::find_certificate(balanced);
  t.check(b.found() && b.certificate->p == std::vector<Rational>{q("1/2"), q("1/2")},
          [] { return std::string("cone {(1,-1)} certificate"); });
  const auto axis = text::parse_yan_model(slurp(fixture("cone_axis.yan")));
  const auto a = yan::find_certificate(axis);
  t.check(!a.found() && a.witness == std::vector<std::size_t>{0}, [] { return std::string("cone {(1,0)} witness"); });
  t.note("600 models (" + std::to_string(per_mode[0]) + " cone, " + std::to_string(per_mode[1]) + " hull), " + std::to_string(found) +
         " certificates");
}

// ---- 7 ---------------------------------------------------------------------

void lp_suite(Tally& t) {
  testkit::Gen gen(7007);
  std::map<std::string, int> counts;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = gen.linear_program(trial % 3 == 0);
    const auto o = lp::solve_lp(p);
    const auto expected = oracle::brute_force(p);
    const auto label = [&] { return "lp " + std::to_string(trial); };
    t.check(o.status == expected.status, label);
    if (o.status == lp::Status::optimal && expected.status == lp::Status::optimal) t.check(o.value == expected.value, label);
    t.check(lp::check_certificate(p, o), label);
    ++counts[lp::to_string(o.status)];
  }
  std::string mix;
  for (const auto& [status, n] : counts) mix += (mix.empty() ? "" : ", ") + std::to_string(n) + " " + status;
  t.note("1000 programs (" + mix + ")");
}

// ---- 8 ---------------------------------------------------------------------

/// B is an atom of the subalgebra generated by a grid of cells inside B:
/// positive mass, and every grid subset carries all of it or none.
bool grid_atom(const std::vector<Term>& terms, const CanonicalSet& b, int cuts_per_interval) {
  std::vector<Rational> masses;
  for (const auto& iv : b.intervals()) {
    const Rational w = (iv.hi - iv.lo) / cuts_per_interval;
    for (int k = 0; k < cuts_per_interval; ++k) masses.push_back(oracle::evaluate(terms, {Interval{iv.lo + k * w, iv.lo + (k + 1) * w}}));
  }
  Rational total = 0;
  for (const auto& m : masses) total += m;
  if (!(total > 0) || masses.size() > 16) return false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << masses.size()); ++mask) {
    Rational part = 0;
    for (std::size_t k = 0; k < masses.size(); ++k)
      if (mask >> k & 1) part += masses[k];
    if (part != 0 && part != total) return false;
  }
  return true;
}

void atoms_suite(Tally& t) {
  testkit::Gen gen(8008);
  std::size_t atom_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto terms = gen.terms(testkit::Gen::ChargeShape{8, true});
    const Charge lambda = Charge::from_terms(terms);
    const auto atoms = enumerate_atoms(lambda);
    atom_count += atoms.size();
    const auto label = [&] { return "lambda " + text::describe_charge(lambda); };

    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto& g = atoms[i].representative;
      t.check(grid_atom(terms, g, g.intervals().size() > 2 ? 2 : 4), label);
      for (std::size_t j = i + 1; j < atoms.size(); ++j) t.check(set_intersection(g, atoms[j].representative).empty(), label);
    }

    // Independent classification of keys by the density near them.
    std::vector<Term> density_terms;
    std::set<Rational> point_keys, limit_keys;
    for (const auto& term : terms) {
      switch (term.primitive.kind()) {
        case PrimitiveKind::density: density_terms.push_back(term); break;
        case PrimitiveKind::point_mass: point_keys.insert(term.primitive.location()); break;
        default: limit_keys.insert(term.primitive.location()); break;
      }
    }
    const Rational h = oracle::quarter_gap(oracle::landmarks({&terms}));
    std::vector<CanonicalSet> synthetic;
    for (const auto& x : point_keys)
      if (oracle::evaluate(density_terms, {Interval{x, x + h}}) == 0) synthetic.push_back(span(x, x + h * gen.integer(1, 4) / 4));
    for (const auto& c : limit_keys)
      if (oracle::evaluate(density_terms, {Interval{c - h, c}}) == 0) synthetic.push_back(span(c - h * gen.integer(1, 4) / 4, c));
    t.check(synthetic.size() == atoms.size(), label);

    for (const auto& b : synthetic) {
      t.check(grid_atom(terms, b, 4), label);
      std::size_t matches = 0;
      for (const auto& atom : atoms) matches += oracle_mass(terms, symmetric_difference(b, atom.representative)) == 0;
      t.check(matches == 1, label);
    }
  }

  // Abutting fixture: no atoms, and no 1/64-grid set is an atom because every
  // cell of positive mass splits into two halves of positive mass.
  const Charge abutting = text::parse_charge(slurp(fixture("atoms_abutting.ch")));
  const auto abutting_terms = abutting.terms();
  t.check(enumerate_atoms(abutting).empty(), [] { return std::string("atoms_abutting.ch has atoms"); });
  for (int k = 0; k < 64; ++k) {
    const Rational lo(k, 64), mid(2 * k + 1, 128), hi(k + 1, 64);
    if (oracle::evaluate(abutting_terms, {Interval{lo, hi}}) == 0) continue;
    t.check(oracle::evaluate(abutting_terms, {Interval{lo, mid}}) > 0 && oracle::evaluate(abutting_terms, {Interval{mid, hi}}) > 0,
            [&] { return "grid cell " + std::to_string(k) + " is an atom"; });
  }
  t.note("300 charges, " + std::to_string(atom_count) + " atoms");
}

// ---- 9 ---------------------------------------------------------------------

struct Captured {
  int code;
  std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Captured shell(const std::vector<std::string>& args) {
  std::string cmd = quote(CHARGEKIT_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Captured c{-1, {}};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return c;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) c.out.append(buffer, n);
  const int status = ::pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

void cli_suite(Tally& t) {
  testkit::Gen gen(9009);
  for (int trial = 0; trial < 200; ++trial) {
    const Charge mu = gen.charge(testkit::Gen::ChargeShape{});
    t.check(text::parse_charge(text::format_charge(mu)) == mu, [&] { return text::format_charge(mu); });
    const auto a = gen.set(4);
    t.check(text::parse_set(text::format_set(a)) == a, [&] { return text::format_set(a); });
    const auto b = gen.extended_set(4);
    t.check(text::parse_extended_set(text::format_extended_set(b)) == b, [&] { return text::format_extended_set(b); });
    const auto m = gen.yan_model(6, 5);
    const auto back = text::parse_yan_model(yan::format_model(m));
    t.check(back.n == m.n && back.lambda == m.lambda && back.generators == m.generators && back.mode == m.mode,
            [&] { return yan::format_model(m); });
  }

  // A charge written to disk and read back by the binary reports the same norm.
  const fs::path dir = fs::temp_directory_path() / ("chargekit-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (int trial = 0; trial < 10; ++trial) {
    const Charge mu = gen.charge(testkit::Gen::ChargeShape{});
    const auto path = (dir / ("mu" + std::to_string(trial) + ".ch")).string();
    std::ofstream(path) << text::format_charge(mu);
    const auto r = shell({"--machine", "tv", path});
    t.check(r.code == 0 && r.out.find("\nnorm=" + to_string(norm(mu)) + "\n") != std::string::npos, [&] { return r.out; });
  }
  fs::remove_all(dir);

  const std::vector<std::vector<std::string>> commands{
      {"--machine", "decompose", fixture("lambda.ch"), "--against", fixture("m1.ch"), fixture("m2.ch")},
      {"--machine", "dominate", fixture("m1.ch"), fixture("m2.ch"), "--lambda", fixture("lambda.ch")},
      {"--machine", "atoms", fixture("atoms_isolated.ch")},
      {"--machine", "complete", fixture("failing_lambda.ch"), "--sequence", "--tests-file", fixture("completion_tests.txt")},
      {"--machine", "yan", fixture("three_point.yan")},
  };
  for (const auto& args : commands) {
    const auto first = shell(args);
    const auto second = shell(args);
    t.check(first.code == second.code && first.out == second.out && !first.out.empty(), [&] { return "nondeterministic: " + args[1]; });
  }

  const auto decompose = shell({"decompose", fixture("lambda.ch"), "--against", fixture("m1.ch"), fixture("m2.ch")});
  t.check(decompose.code == 0 && decompose.out.find("continuous<<aggregate: OK") != std::string::npos,
          [&] { return "decompose exit " + std::to_string(decompose.code); });
  const auto axis = shell({"yan", fixture("cone_axis.yan")});
  t.check(axis.code == 1 && axis.out.find("witness A={0}") != std::string::npos, [&] { return "yan exit " + std::to_string(axis.code); });
  const auto self = shell({"selftest"});
  t.check(self.code == 0, [&] { return "selftest exit " + std::to_string(self.code); });
  const auto syntax = shell({"tv", fixture("bad_syntax.ch")});
  t.check(syntax.code == 2, [&] { return "parse error exit " + std::to_string(syntax.code); });
  const auto range = shell({"tv", fixture("out_of_range.ch")});
  t.check(range.code == 3, [&] { return "range error exit " + std::to_string(range.code); });
  t.note("800 round trips, 10 file round trips, 5 commands run twice, 5 exit codes");
}

struct Criterion {
  const char* name;
  void (*run)(Tally&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"decomposition", decomposition_suite}, {"domination", domination_suite}, {"exhaustion", exhaustion_suite},
      {"left-limit witness", left_limit_witness}, {"completion", completion_suite}, {"yan", yan_suite},
      {"lp engine", lp_suite}, {"atoms", atoms_suite}, {"cli", cli_suite},
  };
  return all;
}

bool run_criterion(std::size_t number) {
  const auto& c = criteria()[number - 1];
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    c.run(t);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = error.empty() && t.passed();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (ok ? "PASS" : "FAIL") << " criterion " << number << " (" << c.name << "): " << t.checks() << " checks, " << t.failures()
       << " failures";
  if (!t.summary().empty()) line << ", " << t.summary();
  line << ", " << seconds << "s";
  std::cout << line.str() << "\n";
  if (!error.empty()) std::cout << "  exception: " << error << "\n";
  for (const auto& n : t.notes()) std::cout << "  " << n << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> chosen;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::cerr << "unknown criterion: " << argv[i] << "\n";
      return 2;
    }
    chosen.push_back(static_cast<std::size_t>(n));
  }
  if (chosen.empty())
    for (std::size_t n = 1; n <= criteria().size(); ++n) chosen.push_back(n);
  bool all = true;
  for (auto n : chosen) all = run_criterion(n) && all;
  return all ? 0 : 1;
}
