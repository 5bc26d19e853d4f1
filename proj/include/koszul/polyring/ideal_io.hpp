#pragma once

// Line-oriented ideal file format:
//
//   # comment
//   field 32003          (or: field Q)
//   vars x0 x1 x2
//   gen x0*x2 - x1^2
//
// Coefficients are integers; terms are joined by + and -, factors by *,
// powers by ^.

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "koszul/polyring/ideal.hpp"

namespace koszul {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

using AnyIdeal = std::variant<Ideal<PrimeField>, Ideal<RationalField>>;

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

template <Field F>
class PolynomialReader {
 public:
  PolynomialReader(const F& field, const std::map<std::string, std::size_t>& vars, const std::string& text,
                   std::size_t line, std::size_t column_offset)
      : field_(field), vars_(vars), s_(text), line_(line), offset_(column_offset) {}

  Polynomial<F> read() {
    std::vector<typename Polynomial<F>::Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip_ws();
    }
    for (;;) {
      auto [coeff, mono] = term();
      if (negative) coeff = -coeff;
      terms.emplace_back(std::move(mono), field_.from_mpz(coeff));
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected character '") + c + "'");
      negative = get() == '-';
      skip_ws();
    }
    return Polynomial<F>(field_, vars_.size(), std::move(terms));
  }

 private:
  std::pair<mpz_class, Monomial> term() {
    mpz_class coeff = 1;
    Monomial mono(vars_.size());
    if (at_end()) fail("expected a term");
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = integer();
      skip_ws();
      if (at_end() || peek() != '*') return {coeff, mono};
      get();
      skip_ws();
    }
    mono = mono * factor();
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      get();
      skip_ws();
      mono = mono * factor();
    }
    return {coeff, mono};
  }

  Monomial factor() {
    if (at_end() || !is_ident_start(peek())) fail("expected a variable");
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    auto it = vars_.find(name);
    if (it == vars_.end()) fail_at(start, "unknown variable '" + name + "'");
    std::vector<int> e(vars_.size(), 0);
    e[it->second] = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      get();
      skip_ws();
      mpz_class k = integer();
      if (k > 1000000) fail("exponent too large");
      e[it->second] = static_cast<int>(k.get_si());
    }
    return Monomial(std::move(e));
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(line_, offset_ + pos + 1, msg);
  }

  const F& field_;
  const std::map<std::string, std::size_t>& vars_;
  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t offset_;
};

struct RawLine {
  std::size_t number;
  std::string keyword;
  std::string rest;
  std::size_t rest_column;  // 0-based column where `rest` starts
};

template <Field F>
Ideal<F> build_ideal(const F& field, const RawLine* vars_line, const std::vector<RawLine>& gens) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  if (vars_line == nullptr) throw ParseError(1, 1, "missing 'vars' line");
  {
    std::istringstream in(vars_line->rest);
    std::string v;
    while (in >> v) {
      if (!is_ident_start(v[0]) ||
          !std::all_of(v.begin(), v.end(), [](char c) { return is_ident_char(c); }))
        throw ParseError(vars_line->number, vars_line->rest_column + 1, "bad variable name '" + v + "'");
      if (index.count(v))
        throw ParseError(vars_line->number, vars_line->rest_column + 1, "duplicate variable '" + v + "'");
      index[v] = names.size();
      names.push_back(v);
    }
  }
  if (names.empty()) throw ParseError(vars_line->number, 1, "'vars' needs at least one variable");
  std::vector<Polynomial<F>> polys;
  for (const auto& g : gens) {
    PolynomialReader<F> reader(field, index, g.rest, g.number, g.rest_column);
    auto f = reader.read();
    if (f.is_zero()) throw ParseError(g.number, g.rest_column + 1, "generator is zero");
    if (!f.is_homogeneous()) throw ParseError(g.number, g.rest_column + 1, "inhomogeneous generator");
    polys.push_back(std::move(f));
  }
  return Ideal<F>(field, std::move(names), std::move(polys));
}

}  // namespace detail

/// Parses the ideal file format. Throws ParseError with 1-based line/column.
inline AnyIdeal parse_ideal(const std::string& text) {
  std::vector<detail::RawLine> lines;
  {
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::size_t i = 0;
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i == raw.size()) continue;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      lines.push_back({n, raw.substr(i, j - i), raw.substr(j), j});
    }
  }

  const detail::RawLine* field_line = nullptr;
  const detail::RawLine* vars_line = nullptr;
  std::vector<detail::RawLine> gens;
  for (const auto& l : lines) {
    if (l.keyword == "field") {
      if (field_line || vars_line || !gens.empty())
        throw ParseError(l.number, 1, "'field' must appear once, before 'vars' and 'gen'");
      field_line = &l;
    } else if (l.keyword == "vars") {
      if (!field_line) throw ParseError(l.number, 1, "missing 'field' header before 'vars'");
      if (vars_line || !gens.empty()) throw ParseError(l.number, 1, "'vars' must appear once, before 'gen'");
      vars_line = &l;
    } else if (l.keyword == "gen") {
      if (!field_line) throw ParseError(l.number, 1, "missing 'field' header");
      if (!vars_line) throw ParseError(l.number, 1, "missing 'vars' line before 'gen'");
      gens.push_back(l);
    } else {
      throw ParseError(l.number, 1, "unknown keyword '" + l.keyword + "'");
    }
  }
  if (!field_line) throw ParseError(1, 1, "missing 'field' header");

  std::istringstream fin(field_line->rest);
  std::string token, extra;
  fin >> token;
  if (token.empty() || (fin >> extra))
    throw ParseError(field_line->number, field_line->rest_column + 1, "field header expects one prime or Q");
  if (token == "Q") return detail::build_ideal(RationalField{}, vars_line, gens);
  if (!std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      token.size() > 10)
    throw ParseError(field_line->number, field_line->rest_column + 2, "bad field '" + token + "'");
  const auto p = std::stoull(token);
  if (p >= (1ull << 31) || !PrimeField::is_prime(p))
    throw ParseError(field_line->number, field_line->rest_column + 2,
                     "field characteristic " + token + " is not a prime below 2^31");
  return detail::build_ideal(PrimeField(static_cast<std::uint32_t>(p)), vars_line, gens);
}

template <Field F>
std::string format_polynomial(const Polynomial<F>& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    mpq_class q;
    if constexpr (std::is_same_v<F, PrimeField>)
      q = f.field().lift(c);
    else
      q = c;
    const bool negative = sgn(q) < 0;
    if (negative) q = -q;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.num_vars(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += q.get_str();
    else if (q == 1)
      out += mono;
    else
      out += q.get_str() + "*" + mono;
  }
  return out;
}

template <Field F>
std::string format_ideal(const Ideal<F>& ideal) {
  std::string out = "field " + ideal.field().name() + "\nvars";
  for (const auto& v : ideal.variables()) out += " " + v;
  out += "\n";
  for (const auto& g : ideal.generators()) out += "gen " + format_polynomial(g, ideal.variables()) + "\n";
  return out;
}

inline std::string format_ideal(const AnyIdeal& ideal) {
  return std::visit([](const auto& i) { return format_ideal(i); }, ideal);
}

}  // namespace koszul
