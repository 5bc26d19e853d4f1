#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace koszul {

/// Exponent vector over the variables x_0 .. x_r.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t num_vars, std::size_t i) {
    Monomial m(num_vars);
    m.exps_[i] = 1;
    return m;
  }

  std::size_t num_vars() const { return exps_.size(); }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const {
    Monomial m(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += o.exps_[i];
    return m;
  }

  Monomial times_variable(std::size_t i) const {
    Monomial m(*this);
    ++m.exps_[i];
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Lexicographic on exponents; only used for map keys.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  std::vector<int> exps_;
};

/// Graded reverse lexicographic order with x_0 > x_1 > ... > x_r.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = a.num_vars(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

/// All monomials of degree d in r+1 variables, largest first in grevlex.
inline std::vector<Monomial> monomial_basis(int r, int d) {
  std::vector<Monomial> out;
  if (r < 0 || d < 0) return out;
  const auto n = static_cast<std::size_t>(r) + 1;
  std::vector<int> e(n, 0);
  // enumerate compositions of d into n parts
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

}  // namespace koszul
