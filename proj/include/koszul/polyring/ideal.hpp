#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "koszul/polyring/polynomial.hpp"

namespace koszul {

/// Monic over F_p.
inline Polynomial<PrimeField> normalized(const Polynomial<PrimeField>& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.field().inv(f.leading_coefficient()));
}

/// Primitive integer polynomial with positive leading coefficient over Q.
inline Polynomial<RationalField> normalized(const Polynomial<RationalField>& f) {
  if (f.is_zero()) return f;
  mpz_class den = 1, num = 0;
  for (const auto& [m, c] : f.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  mpq_class s(den, num);
  s.canonicalize();
  if (sgn(f.leading_coefficient()) < 0) s = -s;
  return f.scaled(s);
}

/// Default variable names x0 .. x_{n-1}.
inline std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

/// Homogeneous ideal given by generators in k[x_0..x_r].
template <Field F>
class Ideal {
 public:
  Ideal(F field, std::vector<std::string> variables, std::vector<Polynomial<F>> generators = {})
      : field_(std::move(field)), vars_(std::move(variables)) {
    if (vars_.empty()) throw std::invalid_argument("Ideal: at least one variable required");
    for (auto& g : generators) {
      require_same_field(field_, g.field(), "Ideal");
      if (g.num_vars() != vars_.size())
        throw std::invalid_argument("Ideal: generator has wrong number of variables");
      if (g.is_zero()) throw std::invalid_argument("Ideal: zero generator");
      if (!g.is_homogeneous()) throw std::invalid_argument("Ideal: inhomogeneous generator");
      gens_.push_back(normalized(g));
    }
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  /// r, where the ambient space is P^r.
  int ambient_dim() const { return static_cast<int>(vars_.size()) - 1; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }

  Polynomial<F> variable(std::size_t i) const { return Polynomial<F>::variable(field_, num_vars(), i); }

  /// Ideal obtained by substituting x_i -> x_{perm[i]}.
  Ideal permuted(const std::vector<std::size_t>& perm) const {
    std::vector<Polynomial<F>> g;
    for (const auto& f : gens_) g.push_back(f.permuted(perm));
    return Ideal(field_, vars_, std::move(g));
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.gens_ == b.gens_;
  }

 private:
  F field_;
  std::vector<std::string> vars_;
  std::vector<Polynomial<F>> gens_;
};

}  // namespace koszul
