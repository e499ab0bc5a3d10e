#pragma once

// Text grammars: charge files, yan model files, set expressions
// (`[a,b)+[c,d)`) and extended-set expressions (`[a,b]+(c,d)+{x}`).
// Rationals are always written `p/q`.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chargekit/algebra.hpp"
#include "chargekit/charge.hpp"
#include "chargekit/completion.hpp"
#include "chargekit/errors.hpp"
#include "chargekit/rational.hpp"
#include "chargekit/yan.hpp"

namespace chargekit::text {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

namespace detail {

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline Rational rational_token(const Token& t, std::size_t line) {
  auto r = parse_rational(t.text);
  if (!r) throw ParseError("expected rational p/q, got '" + t.text + "'", line, t.column);
  return *r;
}

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> directive_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++number;
    auto tokens = tokenize(raw);
    if (!tokens.empty()) out.push_back(Line{number, std::move(tokens)});
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline void expect_count(const Line& l, std::size_t count, const char* shape) {
  if (l.tokens.size() != count) {
    const auto col = l.tokens.size() > count ? l.tokens[count].column : l.tokens.back().column + l.tokens.back().text.size();
    throw ParseError(std::string("expected '") + shape + "'", l.number, col);
  }
}

inline void expect_keyword(const Line& l, std::size_t index, const char* keyword) {
  if (l.tokens[index].text != keyword)
    throw ParseError(std::string("expected '") + keyword + "', got '" + l.tokens[index].text + "'", l.number,
                     l.tokens[index].column);
}

}  // namespace detail

/// Parses a charge file. Range violations surface as OutOfRange tagged with
/// the offending line.
inline Charge parse_charge(std::string_view text) {
  const auto lines = detail::directive_lines(text);
  if (lines.empty()) throw ParseError("empty charge file", 1, 1);
  if (lines.front().tokens.size() != 1 || lines.front().tokens.front().text != "charge")
    throw ParseError("expected header 'charge'", lines.front().number, lines.front().tokens.front().column);

  std::vector<Term> terms;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kind = l.tokens.front().text;
    try {
      if (kind == "point" || kind == "leftlim") {
        detail::expect_count(l, 4, (kind + " <x> coeff <w>").c_str());
        detail::expect_keyword(l, 2, "coeff");
        const Rational x = detail::rational_token(l.tokens[1], l.number);
        const Rational w = detail::rational_token(l.tokens[3], l.number);
        terms.push_back(Term{kind == "point" ? Primitive::point_mass(x) : Primitive::left_limit(x), w});
      } else if (kind == "density") {
        detail::expect_count(l, 5, "density <a> <b> coeff <w>");
        detail::expect_keyword(l, 3, "coeff");
        const Rational a = detail::rational_token(l.tokens[1], l.number);
        const Rational b = detail::rational_token(l.tokens[2], l.number);
        const Rational w = detail::rational_token(l.tokens[4], l.number);
        terms.push_back(Term{Primitive::density(a, b), w});
      } else {
        throw ParseError("unknown directive '" + kind + "'", l.number, l.tokens.front().column);
      }
    } catch (const OutOfRange& e) {
      throw OutOfRange("line " + std::to_string(l.number) + ": " + e.what());
    }
  }
  return Charge::from_terms(terms);
}

inline std::string format_charge(const Charge& mu) {
  std::ostringstream out;
  out << "charge\n";
  for (const auto& t : mu.terms()) {
    const auto& p = t.primitive;
    switch (p.kind()) {
      case PrimitiveKind::point_mass: out << "point " << to_string(p.location()); break;
      case PrimitiveKind::density: out << "density " << to_string(p.interval().lo) << ' ' << to_string(p.interval().hi); break;
      case PrimitiveKind::left_limit: out << "leftlim " << to_string(p.location()); break;
    }
    out << " coeff " << to_string(t.coefficient) << '\n';
  }
  return out.str();
}

/// One-line rendering, e.g. `1/2*point(1/4) + 1/1*density[0/1,1/1)`; `0` for
/// the zero charge.
inline std::string describe_charge(const Charge& mu) {
  if (mu.is_zero()) return "0";
  std::string out;
  for (const auto& t : mu.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(t.coefficient) + "*";
    const auto& p = t.primitive;
    switch (p.kind()) {
      case PrimitiveKind::point_mass: out += "point(" + to_string(p.location()) + ")"; break;
      case PrimitiveKind::density: out += "density[" + to_string(p.interval().lo) + "," + to_string(p.interval().hi) + ")"; break;
      case PrimitiveKind::left_limit: out += "leftlim(" + to_string(p.location()) + ")"; break;
    }
  }
  return out;
}

namespace detail {

struct ExprItem {
  char open;
  char close;
  std::string first;
  std::string second;  // empty for `{x}`
  std::size_t column;
};

// Splits `item+item+...` into bracketed items; whitespace is ignored.
inline std::vector<ExprItem> split_expression(std::string_view text, std::string_view opens) {
  std::vector<ExprItem> items;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (text.substr(i) == "empty" || i == text.size()) return items;
  for (;;) {
    skip_ws();
    if (i >= text.size()) throw ParseError("expected an interval", 1, i + 1);
    const std::size_t start = i;
    const char open = text[i];
    if (opens.find(open) == std::string_view::npos)
      throw ParseError(std::string("unexpected '") + open + "'", 1, i + 1);
    const char close_a = open == '{' ? '}' : ')';
    const char close_b = open == '{' ? '}' : ']';
    const auto end = text.find_first_of(open == '{' ? std::string_view("}") : std::string_view(")]"), i);
    if (end == std::string_view::npos) throw ParseError("unterminated interval", 1, start + 1);
    const char close = text[end];
    if (close != close_a && close != close_b) throw ParseError("bad closing bracket", 1, end + 1);
    std::string body;
    for (char ch : text.substr(i + 1, end - i - 1))
      if (!std::isspace(static_cast<unsigned char>(ch))) body.push_back(ch);
    ExprItem item{open, close, {}, {}, start + 1};
    const auto comma = body.find(',');
    if (open == '{') {
      if (comma != std::string::npos) throw ParseError("a point takes one coordinate", 1, start + 1);
      item.first = body;
    } else {
      if (comma == std::string::npos) throw ParseError("an interval needs two endpoints", 1, start + 1);
      item.first = body.substr(0, comma);
      item.second = body.substr(comma + 1);
    }
    items.push_back(std::move(item));
    i = end + 1;
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '+') throw ParseError(std::string("expected '+', got '") + text[i] + "'", 1, i + 1);
    ++i;
  }
  return items;
}

inline Rational coordinate(const std::string& text, std::size_t column) {
  auto r = parse_rational(text);
  if (!r) throw ParseError("expected rational p/q, got '" + text + "'", 1, column);
  return *r;
}

}  // namespace detail

/// Parses `[a,b)+[c,d)+...` (or `empty`) into canonical form.
inline CanonicalSet parse_set(std::string_view text) {
  std::vector<Interval> ivs;
  for (const auto& item : detail::split_expression(text, "[")) {
    if (item.close != ')') throw ParseError("algebra sets use half-open intervals [a,b)", 1, item.column);
    ivs.push_back(Interval{detail::coordinate(item.first, item.column), detail::coordinate(item.second, item.column)});
  }
  return canonicalize(std::move(ivs));
}

inline std::string format_set(const CanonicalSet& a) {
  if (a.empty()) return "empty";
  std::string out;
  for (const auto& iv : a.intervals()) {
    if (!out.empty()) out += "+";
    out += "[" + to_string(iv.lo) + "," + to_string(iv.hi) + ")";
  }
  return out;
}

inline ExtendedSet parse_extended_set(std::string_view text) {
  std::vector<ExtendedPart> parts;
  for (const auto& item : detail::split_expression(text, "[({")) {
    if (item.open == '{') {
      parts.push_back(ExtendedPart::point(detail::coordinate(item.first, item.column)));
      continue;
    }
    ExtendedPart p{detail::coordinate(item.first, item.column), detail::coordinate(item.second, item.column),
                   item.open == '[', item.close == ']'};
    if (p.hi < p.lo) throw OutOfRange("interval at column " + std::to_string(item.column) + " has lo > hi");
    parts.push_back(std::move(p));
  }
  return ExtendedSet::from_parts(parts);
}

inline std::string format_extended_set(const ExtendedSet& b) {
  const auto parts = b.parts();
  if (parts.empty()) return "empty";
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "+";
    if (p.is_point()) {
      out += "{" + to_string(p.lo) + "}";
    } else {
      out += (p.lo_closed ? "[" : "(") + to_string(p.lo) + "," + to_string(p.hi) + (p.hi_closed ? "]" : ")");
    }
  }
  return out;
}

/// One extended-set expression per non-blank line; `#` starts a comment.
inline std::vector<ExtendedSet> parse_extended_set_list(std::string_view text) {
  std::vector<ExtendedSet> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++number;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse_extended_set(line));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), number, e.column());
      }
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

/// Parses a sequence file:
///
///   sequence
///   set [0/1,1/4)+[1/2,3/4)
///   tail limit 1/1 scale 1/2 first 1
///
/// `set` lines form the head in order; at most one `tail` line closes it.
inline SetSequence parse_sequence(std::string_view text) {
  const auto lines = detail::directive_lines(text);
  if (lines.empty()) throw ParseError("empty sequence file", 1, 1);
  if (lines.front().tokens.size() != 1 || lines.front().tokens.front().text != "sequence")
    throw ParseError("expected header 'sequence'", lines.front().number, lines.front().tokens.front().column);
  SetSequence seq;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kind = l.tokens.front().text;
    if (seq.tail) throw ParseError("nothing may follow the tail", l.number, l.tokens.front().column);
    if (kind == "set") {
      // The expression is everything after the keyword, spaces included.
      std::string expr;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) expr += l.tokens[i].text;
      if (expr.empty()) throw ParseError("expected a set expression", l.number, l.tokens.front().column + 3);
      try {
        seq.head.push_back(parse_set(expr));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), l.number, l.tokens[1].column + e.column() - 1);
      }
    } else if (kind == "tail") {
      detail::expect_count(l, 7, "tail limit <c> scale <s> first <n>");
      detail::expect_keyword(l, 1, "limit");
      detail::expect_keyword(l, 3, "scale");
      detail::expect_keyword(l, 5, "first");
      const auto& f = l.tokens[6];
      if (f.text.empty() || f.text.size() > 9 || !std::all_of(f.text.begin(), f.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a positive index", l.number, f.column);
      seq.tail = HarmonicTail{detail::rational_token(l.tokens[2], l.number), detail::rational_token(l.tokens[4], l.number),
                              std::stoul(f.text)};
    } else {
      throw ParseError("unknown directive '" + kind + "'", l.number, l.tokens.front().column);
    }
  }
  return seq;
}

/// Parses a yan model file. Structural problems are ParseErrors; inconsistent
/// dimensions surface from YanModel::validate.
inline yan::YanModel parse_yan_model(std::string_view text) {
  const auto lines = detail::directive_lines(text);
  if (lines.empty()) throw ParseError("empty model file", 1, 1);
  if (lines.front().tokens.size() != 1 || lines.front().tokens.front().text != "yan")
    throw ParseError("expected header 'yan'", lines.front().number, lines.front().tokens.front().column);
  yan::YanModel m;
  bool have_space = false, have_lambda = false, have_mode = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kind = l.tokens.front().text;
    auto values = [&] {
      std::vector<Rational> v;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) v.push_back(detail::rational_token(l.tokens[i], l.number));
      return v;
    };
    if (kind == "space") {
      detail::expect_count(l, 2, "space <n>");
      const auto& t = l.tokens[1];
      if (t.text.empty() || t.text.size() > 6 || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a point count", l.number, t.column);
      m.n = std::stoul(t.text);
      have_space = true;
    } else if (kind == "lambda") {
      m.lambda = values();
      have_lambda = true;
    } else if (kind == "mode") {
      detail::expect_count(l, 2, "mode hull|cone");
      if (l.tokens[1].text == "hull") {
        m.mode = yan::Mode::hull;
      } else if (l.tokens[1].text == "cone") {
        m.mode = yan::Mode::cone;
      } else {
        throw ParseError("mode must be 'hull' or 'cone'", l.number, l.tokens[1].column);
      }
      have_mode = true;
    } else if (kind == "gen") {
      m.generators.push_back(values());
    } else {
      throw ParseError("unknown directive '" + kind + "'", l.number, l.tokens.front().column);
    }
  }
  if (!have_space) throw ParseError("missing 'space' directive", lines.back().number, 1);
  if (!have_lambda) throw ParseError("missing 'lambda' directive", lines.back().number, 1);
  if (!have_mode) throw ParseError("missing 'mode' directive", lines.back().number, 1);
  return m;
}

}  // namespace chargekit::text
