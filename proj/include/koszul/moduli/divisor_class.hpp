#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace koszul::moduli {

// a*lambda - sum b_i delta_i on the moduli space of genus-g curves.
// Coefficients the source formula does not give are left empty.
class DivisorClass {
 public:
  DivisorClass(int g, mpq_class a, std::vector<std::optional<mpq_class>> b) : g_(g), a_(std::move(a)), b_(std::move(b)) {
    if (g < 2) throw std::invalid_argument("DivisorClass: genus must be >= 2");
    if (b_.size() != static_cast<std::size_t>(g / 2 + 1))
      throw std::invalid_argument("DivisorClass: need [g/2] + 1 boundary coefficients");
  }

  int genus() const { return g_; }
  const mpq_class& a() const { return a_; }
  const std::vector<std::optional<mpq_class>>& b() const { return b_; }
  bool complete() const {
    for (const auto& x : b_)
      if (!x) return false;
    return true;
  }

 private:
  int g_;
  mpq_class a_;
  std::vector<std::optional<mpq_class>> b_;
};

struct Slope {
  mpq_class value;
  bool partial = false;  // some b_i were absent and skipped
};

/// a / min b_i over the coefficients that are present.
inline Slope slope(const DivisorClass& D) {
  std::optional<mpq_class> lo;
  for (std::size_t i = 0; i < D.b().size(); ++i) {
    const auto& bi = D.b()[i];
    if (!bi) continue;
    if (*bi <= 0) throw std::domain_error("slope: b_" + std::to_string(i) + " <= 0, slope undefined");
    if (!lo || *bi < *lo) lo = *bi;
  }
  if (!lo) throw std::domain_error("slope: no boundary coefficients");
  return {D.a() / *lo, !D.complete()};
}

}  // namespace koszul::moduli
