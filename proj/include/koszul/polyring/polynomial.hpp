#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "koszul/exactalg/field.hpp"
#include "koszul/polyring/monomial.hpp"

namespace koszul {

/// Sparse polynomial; terms sorted by decreasing grevlex, no zero coefficients.
template <Field F>
class Polynomial {
 public:
  using element = typename F::element;
  using Term = std::pair<Monomial, element>;

  Polynomial(F field, std::size_t num_vars) : field_(std::move(field)), num_vars_(num_vars) {}

  /// Combines like terms and drops zeros.
  Polynomial(F field, std::size_t num_vars, std::vector<Term> terms)
      : Polynomial(std::move(field), num_vars) {
    for (const auto& t : terms)
      if (t.first.num_vars() != num_vars_)
        throw std::invalid_argument("Polynomial: monomial has wrong number of variables");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grevlex_greater(a.first, b.first); });
    for (auto& t : terms) {
      if (!terms_.empty() && terms_.back().first == t.first) {
        terms_.back().second = field_.add(terms_.back().second, t.second);
        if (field_.is_zero(terms_.back().second)) terms_.pop_back();
      } else if (!field_.is_zero(t.second)) {
        terms_.push_back(std::move(t));
      }
    }
  }

  static Polynomial variable(F field, std::size_t num_vars, std::size_t i) {
    auto one = field.one();
    return Polynomial(field, num_vars, {{Monomial::variable(num_vars, i), one}});
  }

  const F& field() const { return field_; }
  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const element& leading_coefficient() const { return terms_.front().second; }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.first.degree() == terms_.front().first.degree(); });
  }

  /// Degree of a nonzero homogeneous polynomial.
  int degree() const {
    if (terms_.empty()) throw std::logic_error("Polynomial: degree of zero");
    return terms_.front().first.degree();
  }

  Polynomial operator+(const Polynomial& o) const {
    require_same_field(field_, o.field_, "Polynomial::operator+");
    auto all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return Polynomial(field_, num_vars_, std::move(all));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + o.scaled(field_.neg(field_.one())); }

  Polynomial operator*(const Polynomial& o) const {
    require_same_field(field_, o.field_, "Polynomial::operator*");
    std::vector<Term> all;
    all.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) all.emplace_back(a.first * b.first, field_.mul(a.second, b.second));
    return Polynomial(field_, num_vars_, std::move(all));
  }

  Polynomial scaled(const element& c) const {
    std::vector<Term> t;
    for (const auto& [m, v] : terms_) t.emplace_back(m, field_.mul(c, v));
    return Polynomial(field_, num_vars_, std::move(t));
  }

  Polynomial times_monomial(const Monomial& m) const {
    Polynomial out(field_, num_vars_);
    out.terms_.reserve(terms_.size());
    // multiplying by a monomial preserves grevlex order
    for (const auto& [mm, v] : terms_) out.terms_.emplace_back(mm * m, v);
    return out;
  }

  /// Substitute x_i -> x_{perm[i]}.
  Polynomial permuted(const std::vector<std::size_t>& perm) const {
    std::vector<Term> t;
    for (const auto& [m, v] : terms_) {
      std::vector<int> e(num_vars_, 0);
      for (std::size_t i = 0; i < num_vars_; ++i) e[perm[i]] = m[i];
      t.emplace_back(Monomial(std::move(e)), v);
    }
    return Polynomial(field_, num_vars_, std::move(t));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  F field_;
  std::size_t num_vars_;
  std::vector<Term> terms_;
};

}  // namespace koszul
