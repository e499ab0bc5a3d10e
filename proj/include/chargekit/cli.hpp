#pragma once

// Command-line front end. `run` parses arguments, dispatches to the library
// and writes a report; the return value is the process exit code:
//   0 ok, 1 violation or witness found, 2 parse/usage error, 3 semantic error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chargekit/charge.hpp"
#include "chargekit/completion.hpp"
#include "chargekit/decomposition.hpp"
#include "chargekit/domination.hpp"
#include "chargekit/errors.hpp"
#include "chargekit/report.hpp"
#include "chargekit/selftest.hpp"
#include "chargekit/text_format.hpp"
#include "chargekit/yan.hpp"

namespace chargekit::cli {

enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_parse = 2, exit_semantic = 3 };

inline constexpr std::size_t default_family_cap = 10000;

/// Family-size cap, overridable through CHARGEKIT_MAX_FAMILY.
inline std::size_t family_cap() {
  const char* env = std::getenv("CHARGEKIT_MAX_FAMILY");
  if (!env || !*env) return default_family_cap;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw BadInput(std::string("CHARGEKIT_MAX_FAMILY must be a positive integer, got '") + env + "'");
}

namespace detail {

// A parse failure attributed to an input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Parser>
auto parse_file(const std::string& path, Parser parser) {
  const std::string text = read_file(path);
  try {
    return parser(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message());
  } catch (const OutOfRange& e) {
    throw OutOfRange(path + ": " + e.what());
  }
}

inline Charge load_charge(const std::string& path) { return parse_file(path, text::parse_charge); }

template <class Parser>
auto parse_argument(const std::string& what, const std::string& value, Parser parser) {
  try {
    return parser(value);
  } catch (const ParseError& e) {
    throw InputError(what + " '" + value + "': column " + std::to_string(e.column()) + ": " + e.message());
  }
}

inline Rational rational_argument(const std::string& what, const std::string& value) {
  const auto r = parse_rational(value);
  if (!r) throw InputError(what + ": expected rational p/q, got '" + value + "'");
  return *r;
}

inline void check_cap(std::size_t count, const char* what) {
  const std::size_t cap = family_cap();
  if (count > cap)
    throw TooLarge(std::string(what) + " has " + std::to_string(count) + " entries, cap is " + std::to_string(cap));
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string index_list(const std::vector<std::size_t>& idx, std::size_t base) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i] + base);
  return out + "}";
}

inline std::string vector_text(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + ")";
}

inline void charge_section(Report& r, const std::string& title, const Charge& mu) {
  r.section(title).block(text::format_charge(mu));
}

// Sets used to show a sequence A_k whose ν-mass vanishes.
inline std::string witness_text(const ContinuityWitness& w) {
  return "A_1=" + text::format_set(w.at(1)) + " A_2=" + text::format_set(w.at(2)) + " A_4=" + text::format_set(w.at(4));
}

}  // namespace detail

struct Options {
  bool machine_only = false;
};

inline Report cmd_eval(const std::string& charge_path, const std::string& set_expr) {
  const Charge mu = detail::load_charge(charge_path);
  const CanonicalSet a = detail::parse_argument("set", set_expr, text::parse_set);
  const Rational v = evaluate(mu, a);
  Report r;
  r.section("evaluate").line("set " + text::format_set(a)).line("value " + to_string(v));
  r.key("set", text::format_set(a)).key("value", to_string(v));
  return r;
}

inline Report cmd_tv(const std::string& charge_path) {
  const Charge mu = detail::load_charge(charge_path);
  const auto tv = total_variation(mu);
  Report r;
  detail::charge_section(r, "total variation", tv.charge);
  r.section("norm").line(to_string(tv.norm));
  r.key("abs", text::describe_charge(tv.charge)).key("norm", to_string(tv.norm));
  return r;
}

inline Report cmd_relate(const std::string& mu_path, const std::string& nu_path) {
  const Charge mu = detail::load_charge(mu_path);
  const Charge nu = detail::load_charge(nu_path);
  const Rational eps = make_rational(1, 1000);
  Report r;
  r.section("relations");
  auto continuity = [&](const char* label, const char* key, const Charge& a, const Charge& b) {
    const bool holds = abs_continuous(a, b);
    std::string line = std::string(label) + ": " + detail::yes_no(holds);
    if (!holds) line += " (witness " + detail::witness_text(*continuity_witness(a, b)) + ")";
    r.line(line);
    r.key(key, detail::yes_no(holds));
  };
  continuity("mu<<nu", "mu_ac_nu", mu, nu);
  continuity("nu<<mu", "nu_ac_mu", nu, mu);
  const bool sing = singular(mu, nu);
  std::string line = std::string("mu_perp_nu: ") + detail::yes_no(sing);
  r.key("singular", detail::yes_no(sing));
  if (sing) {
    const auto b = splitting_set(mu, nu, eps);
    line += " (B=" + text::format_set(*b) + ", eps=" + to_string(eps) + ")";
    r.key("splitting_set", text::format_set(*b));
  }
  r.line(line);
  const Charge m = meet(abs(mu), abs(nu));
  detail::charge_section(r, "meet(|mu|,|nu|)", m);
  r.key("meet", text::describe_charge(m));
  return r;
}

inline Report cmd_decompose(const std::string& lambda_path, const std::vector<std::string>& against,
                            const std::vector<std::string>& weights) {
  detail::check_cap(against.size(), "family");
  const Charge lambda = detail::load_charge(lambda_path);
  ChargeFamily family;
  for (const auto& p : against) family.members.push_back(detail::load_charge(p));
  if (!weights.empty()) {
    std::vector<Rational> w;
    for (const auto& s : weights) w.push_back(detail::rational_argument("--weights", s));
    family.weights = std::move(w);
  }
  const auto d = lebesgue_decompose(lambda, family);
  const std::vector<Rational> used = family.empty() ? std::vector<Rational>{} : effective_weights(family);

  Report r;
  detail::charge_section(r, "lambda", lambda);
  for (std::size_t i = 0; i < family.size(); ++i) {
    detail::charge_section(r, "mu_" + std::to_string(i + 1) + " (" + against[i] + ")", family.members[i]);
  }
  r.section("weights").line(used.empty() ? "none" : detail::vector_text(used));
  detail::charge_section(r, "continuous part", d.continuous_part);
  detail::charge_section(r, "singular part", d.singular_part);

  r.key("lambda", text::describe_charge(lambda));
  for (std::size_t i = 0; i < family.size(); ++i) {
    r.key("member." + std::to_string(i + 1), text::describe_charge(family.members[i]));
    r.key("weight." + std::to_string(i + 1), to_string(used[i]));
  }
  r.key("continuous", text::describe_charge(d.continuous_part));
  r.key("singular", text::describe_charge(d.singular_part));

  // Re-derive the defining properties from the decision procedures.
  r.section("verification");
  bool ok = d.continuous_part + d.singular_part == lambda;
  r.line(std::string("continuous+singular=lambda: ") + (ok ? "OK" : "FAIL"));
  const bool ac = family.empty() ? d.continuous_part.is_zero() : abs_continuous(d.continuous_part, d.aggregate);
  r.line(std::string("continuous<<aggregate: ") + (ac ? "OK" : "FAIL"));
  r.key("check.continuous", ac ? "OK" : "FAIL");
  ok = ok && ac;
  const Rational eps = make_rational(1, 1000);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto b = splitting_set(d.singular_part, family.members[i], eps);
    const std::string tag = "singular_vs[mu_" + std::to_string(i + 1) + "]";
    if (b) {
      r.line(tag + ": OK (B=" + text::format_set(*b) + ", eps=" + to_string(eps) + ")");
    } else {
      r.line(tag + ": FAIL");
    }
    r.key("check.singular." + std::to_string(i + 1), b ? "OK" : "FAIL");
    ok = ok && b.has_value();
  }
  if (!ok) r.status = ReportStatus::violation;
  return r;
}

inline Report cmd_dominate(const std::vector<std::string>& members, const std::optional<std::string>& lambda_path) {
  detail::check_cap(members.size(), "family");
  ChargeFamily family;
  for (const auto& p : members) family.members.push_back(detail::load_charge(p));
  std::optional<Charge> lambda;
  if (lambda_path) lambda = detail::load_charge(*lambda_path);
  const auto rep = dominate(family, lambda);

  Report r;
  detail::charge_section(r, "dominating aggregate", rep.dominating);
  r.section("members");
  for (std::size_t i = 0; i < family.size(); ++i) {
    r.line("mu_" + std::to_string(i + 1) + "<<aggregate: " + detail::yes_no(rep.per_member[i]));
  }
  r.section("equivalent subfamily").line(detail::index_list(rep.equivalent_subfamily, 1));
  r.key("aggregate", text::describe_charge(rep.dominating));
  for (std::size_t i = 0; i < family.size(); ++i) r.key("dominated." + std::to_string(i + 1), detail::yes_no(rep.per_member[i]));
  r.key("subfamily", detail::index_list(rep.equivalent_subfamily, 1));
  bool ok = rep.all_dominated();
  if (rep.pivot) {
    r.section("pivot");
    for (std::size_t i = 0; i < family.size(); ++i) {
      r.line("mu_" + std::to_string(i + 1) + ": <<lambda " + detail::yes_no(rep.pivot->against_lambda[i]) + ", <<lambda^c " +
             detail::yes_no(rep.pivot->against_continuous[i]));
    }
    r.line(std::string("pivot: ") + (rep.pivot->holds() ? "OK" : "FAIL"));
    r.key("pivot", rep.pivot->holds() ? "OK" : "FAIL");
    ok = ok && rep.pivot->holds();
  }
  if (!ok) r.status = ReportStatus::violation;
  return r;
}

inline Report cmd_exhaust(const std::string& lambda_path, const std::vector<std::string>& set_exprs) {
  detail::check_cap(set_exprs.size(), "set family");
  const Charge lambda = detail::load_charge(lambda_path);
  std::vector<CanonicalSet> sets;
  for (const auto& e : set_exprs) sets.push_back(detail::parse_argument("set", e, text::parse_set));
  const auto trace = exhaust(lambda, sets);

  Report r;
  r.section("chosen");
  for (std::size_t k = 0; k < trace.chosen.size(); ++k) {
    r.line("H_" + std::to_string(k + 1) + " = " + text::format_set(trace.chosen[k]) + " (input " +
           std::to_string(trace.chosen_index[k] + 1) + ")");
  }
  r.section("residuals").line("k residual_k").line("0 " + to_string(trace.initial_residual));
  for (std::size_t k = 0; k < trace.residuals.size(); ++k) r.line(std::to_string(k + 1) + " " + to_string(trace.residuals[k]));

  r.key("steps", std::to_string(trace.chosen.size()));
  r.key("chosen", detail::index_list(trace.chosen_index, 1));
  r.key("residual.0", to_string(trace.initial_residual));
  for (std::size_t k = 0; k < trace.residuals.size(); ++k) r.key("residual." + std::to_string(k + 1), to_string(trace.residuals[k]));
  if (trace.final_residual() != 0) r.status = ReportStatus::violation;
  return r;
}

inline Report cmd_atoms(const std::string& lambda_path) {
  const Charge lambda = detail::load_charge(lambda_path);
  const auto atoms = enumerate_atoms(lambda);
  Report r;
  r.section("atoms");
  if (atoms.empty()) r.line("none");
  r.key("count", std::to_string(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    const std::string g = text::format_set(a.representative);
    r.line("G_" + std::to_string(i + 1) + " = " + g + " (" + to_string(a.kind) + " " + to_string(a.location) +
           ", mass " + to_string(evaluate(lambda, a.representative)) + ")");
    r.key("atom." + std::to_string(i + 1), std::string(to_string(a.kind)) + " " + to_string(a.location) + " " + g);
  }
  return r;
}

struct CompleteArgs {
  std::string lambda_path;
  std::optional<std::string> set_expr;
  bool sequence = false;
  std::optional<std::string> sequence_file;
  std::vector<std::string> tests;
  std::optional<std::string> tests_file;
  std::optional<std::string> capture;
  std::optional<std::string> grid;
};

inline Report cmd_complete(const CompleteArgs& args) {
  const Charge lambda = detail::load_charge(args.lambda_path);
  Report r;
  if (!args.sequence && !args.sequence_file) {
    if (!args.set_expr) throw detail::InputError("complete: give a set expression, --sequence or --sequence-file");
    const ExtendedSet b = detail::parse_argument("set", *args.set_expr, text::parse_extended_set);
    const auto s = completion_status(lambda, b);
    r.section("completion")
        .line("set " + text::format_extended_set(b))
        .line("inner " + to_string(s.inner))
        .line("outer " + to_string(s.outer))
        .line(std::string("member ") + detail::yes_no(s.member()))
        .line("bar-lambda " + (s.member() ? to_string(s.inner) : std::string("undefined")));
    r.key("set", text::format_extended_set(b)).key("inner", to_string(s.inner)).key("outer", to_string(s.outer));
    r.key("member", detail::yes_no(s.member()));
    if (s.member()) r.key("bar_lambda", to_string(s.inner));
    return r;
  }

  SetSequence seq;
  if (args.sequence_file) {
    seq = detail::parse_file(*args.sequence_file, text::parse_sequence);
  } else {
    CompletionParameters params;
    if (args.capture) params.capture = detail::rational_argument("--capture", *args.capture);
    if (args.grid) params.grid = detail::rational_argument("--grid", *args.grid);
    seq.head = completion_sequence(lambda, params);
  }
  std::vector<ExtendedSet> tests;
  for (const auto& t : args.tests) tests.push_back(detail::parse_argument("test set", t, text::parse_extended_set));
  if (args.tests_file) {
    const auto more = detail::parse_file(*args.tests_file, text::parse_extended_set_list);
    tests.insert(tests.end(), more.begin(), more.end());
  }
  if (args.set_expr) tests.push_back(detail::parse_argument("set", *args.set_expr, text::parse_extended_set));
  if (tests.empty()) tests.push_back(ExtendedSet::whole());

  r.section("sequence");
  Rational head_total = 0;
  for (std::size_t n = 0; n < seq.head.size(); ++n) {
    const Rational m = evaluate(lambda, seq.head[n]);
    head_total += m;
    r.line("A_" + std::to_string(n + 1) + " = " + text::format_set(seq.head[n]) + " lambda " + to_string(m));
  }
  if (seq.tail) {
    const auto& t = *seq.tail;
    r.line("tail A_n = [" + to_string(t.limit) + " - (" + to_string(t.scale) + ")/n, " + to_string(t.limit) + " - (" +
           to_string(t.scale) + ")/(n+1)) for n >= " + std::to_string(t.first));
  }
  r.key("head_length", std::to_string(seq.head.size()));
  r.key("head_mass", to_string(head_total));
  r.key("tail", seq.tail ? "yes" : "no");

  const auto defects = verify_sigma_additivity(lambda, seq, tests);
  r.section("sigma-additivity").line("test measure series defect");
  for (std::size_t i = 0; i < defects.size(); ++i) {
    const auto& d = defects[i];
    r.line(text::format_extended_set(d.test) + " " + to_string(d.measure) + " " + to_string(d.series) + " " + to_string(d.defect));
    r.key("defect." + std::to_string(i + 1), to_string(d.defect));
  }
  const bool ok = all_zero(defects);
  r.line(ok ? "PASS" : "FAIL");
  if (!ok) r.status = ReportStatus::violation;
  return r;
}

inline Report cmd_yan(const std::string& path) {
  const auto model = detail::parse_file(path, text::parse_yan_model);
  const auto search = yan::find_certificate(model);
  Report r;
  r.key("mode", yan::to_string(model.mode)).key("space", std::to_string(model.n));
  if (search.found()) {
    const auto& c = *search.certificate;
    r.section("result").line("PASS");
    r.section("certificate")
        .line("p " + detail::vector_text(c.p))
        .line("margin " + to_string(c.margin))
        .line("k_bound " + to_string(c.k_bound))
        .line("ratio_bound " + to_string(c.ratio_bound))
        .line(std::string("verified ") + detail::yes_no(yan::verify_certificate(model, c)));
    r.key("result", "PASS").key("p", detail::vector_text(c.p)).key("margin", to_string(c.margin));
    r.key("k_bound", to_string(c.k_bound)).key("ratio_bound", to_string(c.ratio_bound));
  } else {
    const std::string a = search.witness ? detail::index_list(*search.witness, 0) : std::string("{}");
    r.section("result").line("FAIL").line("witness A=" + a);
    r.key("result", "FAIL").key("witness", a);
    r.status = ReportStatus::violation;
  }
  return r;
}

inline Report cmd_selftest() {
  Report r;
  r.section("selftest");
  std::size_t failed = 0;
  const auto results = run_selftest();
  for (const auto& res : results) {
    r.line(std::string(res.passed ? "PASS " : "FAIL ") + res.name + (res.error.empty() ? "" : " (" + res.error + ")"));
    failed += res.passed ? 0 : 1;
  }
  r.key("checks", std::to_string(results.size())).key("failed", std::to_string(failed));
  if (failed) r.status = ReportStatus::violation;
  return r;
}

inline int exit_code(ReportStatus s) {
  switch (s) {
    case ReportStatus::ok: return exit_ok;
    case ReportStatus::violation: return exit_violation;
    case ReportStatus::error: return exit_semantic;
  }
  return exit_semantic;
}

/// `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finitely additive measure toolkit", "chargekit"};
  app.require_subcommand(1, 1);
  Options opts;
  app.add_flag("--machine", opts.machine_only, "Print only the key=value block");

  std::string p1, p2, set_expr;
  std::vector<std::string> list, weights;
  std::optional<std::string> lambda_opt;
  CompleteArgs complete;

  auto* eval = app.add_subcommand("eval", "Evaluate a charge on an algebra set");
  eval->add_option("charge", p1, "Charge file")->required();
  eval->add_option("set", set_expr, "Set expression [a,b)+...")->required();

  auto* tv = app.add_subcommand("tv", "Total variation and norm");
  tv->add_option("charge", p1, "Charge file")->required();

  auto* relate = app.add_subcommand("relate", "Absolute continuity, singularity and meet of two charges");
  relate->add_option("mu", p1, "Charge file")->required();
  relate->add_option("nu", p2, "Charge file")->required();

  auto* decompose = app.add_subcommand("decompose", "Lebesgue decomposition against a family");
  decompose->add_option("lambda", p1, "Charge file")->required();
  decompose->add_option("--against", list, "Family member files")->expected(0, -1);
  decompose->add_option("--weights", weights, "Aggregate weights p/q, one per member")->expected(1, -1);

  auto* dom = app.add_subcommand("dominate", "Dominating aggregate and equivalent subfamily");
  dom->add_option("members", list, "Family member files")->required();
  dom->add_option("--lambda", lambda_opt, "Charge file for the pivot check");

  auto* exh = app.add_subcommand("exhaust", "Greedy exhaustion of a set family");
  exh->add_option("lambda", p1, "Positive charge file")->required();
  exh->add_option("sets", list, "Set expressions")->required();

  auto* atoms = app.add_subcommand("atoms", "Enumerate atoms of a positive charge");
  atoms->add_option("lambda", p1, "Positive charge file")->required();

  auto* comp = app.add_subcommand("complete", "Completion membership and sigma-additivity checks");
  comp->add_option("lambda", complete.lambda_path, "Positive charge file")->required();
  // Closed brackets would otherwise be read as CLI11 list syntax.
  comp->add_option("set", complete.set_expr, "Extended set expression")->allow_extra_args(false);
  comp->add_flag("--sequence", complete.sequence, "Build the exhaustion sequence and verify it");
  comp->add_option("--sequence-file", complete.sequence_file, "Verify the sequence in this file");
  comp->add_option("--test", complete.tests, "Extended test set for the verifier (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  comp->add_option("--tests-file", complete.tests_file, "File of extended test sets, one per line");
  comp->add_option("--capture", complete.capture, "Capture radius p/q");
  comp->add_option("--grid", complete.grid, "Grid cell width 1/N");

  auto* yanc = app.add_subcommand("yan", "Separation certificate or witness for a finite model");
  yanc->add_option("model", p1, "Model file")->required();

  auto* self = app.add_subcommand("selftest", "Run the built-in checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  }

  try {
    Report report;
    if (eval->parsed()) {
      report = cmd_eval(p1, set_expr);
    } else if (tv->parsed()) {
      report = cmd_tv(p1);
    } else if (relate->parsed()) {
      report = cmd_relate(p1, p2);
    } else if (decompose->parsed()) {
      report = cmd_decompose(p1, list, weights);
    } else if (dom->parsed()) {
      report = cmd_dominate(list, lambda_opt);
    } else if (exh->parsed()) {
      report = cmd_exhaust(p1, list);
    } else if (atoms->parsed()) {
      report = cmd_atoms(p1);
    } else if (comp->parsed()) {
      report = cmd_complete(complete);
    } else if (yanc->parsed()) {
      report = cmd_yan(p1);
    } else if (self->parsed()) {
      report = cmd_selftest();
    }
    out << (opts.machine_only ? report.machine_block() : report.render());
    return exit_code(report.status);
  } catch (const detail::InputError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const OutOfRange& e) {
    err << "range error: " << e.what() << "\n";
    return exit_semantic;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic;
  }
}

}  // namespace chargekit::cli
