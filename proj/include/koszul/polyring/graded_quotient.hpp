#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "koszul/exactalg/elimination.hpp"
#include "koszul/polyring/ideal.hpp"

namespace koszul {

/// Degreewise linear-algebra model of R = S/I. Each degree piece is built
/// once on first use from the generator multiples in that degree; there is
/// no saturation, so R_d is (S/I)_d for the ideal exactly as given.
template <Field F>
class GradedQuotient {
 public:
  struct DegreePiece {
    int degree = 0;
    std::vector<Monomial> monomials;          // basis of S_d, grevlex descending
    std::map<Monomial, std::uint32_t> index;  // monomial -> column
    EchelonForm<F> ideal;                     // row space is I_d
    std::vector<std::uint32_t> basis;         // columns of the standard monomials spanning R_d
    std::vector<int> slot;                    // column -> position in `basis`, or -1
  };

  explicit GradedQuotient(Ideal<F> ideal) : ideal_(std::move(ideal)) {}
  GradedQuotient(const GradedQuotient&) = delete;
  GradedQuotient& operator=(const GradedQuotient&) = delete;

  const Ideal<F>& ideal() const { return ideal_; }
  const F& field() const { return ideal_.field(); }
  std::size_t num_vars() const { return ideal_.num_vars(); }
  int ambient_dim() const { return ideal_.ambient_dim(); }

  const DegreePiece& piece(int d) const {
    if (d < 0) throw std::invalid_argument("GradedQuotient: negative degree");
    Slot& s = slot(d);
    std::call_once(s.piece_once, [&] { s.piece = build_piece(d); });
    return *s.piece;
  }

  std::size_t ideal_dim(int d) const { return d < 0 ? 0 : piece(d).ideal.rank(); }
  std::size_t dim(int d) const { return d < 0 ? 0 : piece(d).basis.size(); }

  std::vector<Monomial> basis(int d) const {
    std::vector<Monomial> out;
    if (d < 0) return out;
    const auto& p = piece(d);
    for (auto c : p.basis) out.push_back(p.monomials[c]);
    return out;
  }

  /// Coordinates of a degree-d vector (given on the monomial basis of S_d) in R_d.
  SparseVector<F> normal_form(int d, SparseVector<F> coords) const {
    const auto& p = piece(d);
    auto reduced = p.ideal.reduce(std::move(coords));
    for (auto& e : reduced) e.first = static_cast<std::uint32_t>(p.slot[e.first]);
    return reduced;
  }

  /// Coordinates of a homogeneous polynomial of degree d in R_d.
  SparseVector<F> normal_form(const Polynomial<F>& f, int d) const {
    require_same_field(field(), f.field(), "normal_form");
    if (f.is_zero()) return {};
    if (!f.is_homogeneous() || f.degree() != d)
      throw std::invalid_argument("normal_form: polynomial is not homogeneous of the stated degree");
    const auto& p = piece(d);
    SparseVector<F> v;
    for (const auto& [m, c] : f.terms()) v.emplace_back(p.index.at(m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return normal_form(d, std::move(v));
  }

  /// Images of the R_q basis under multiplication by x_var, in R_{q+1} coordinates.
  const std::vector<SparseVector<F>>& multiplication(int q, std::size_t var) const {
    if (var >= num_vars()) throw std::out_of_range("multiplication: variable index");
    Slot& s = slot(q);
    std::call_once(s.mult_once, [&] { s.mult = build_multiplication(q); });
    return s.mult[var];
  }

  /// v * c for a linear form v and c in R_q, in R_{q+1} coordinates.
  SparseVector<F> multiply(const Polynomial<F>& v, const SparseVector<F>& c, int q) const {
    require_same_field(field(), v.field(), "multiply_into_quotient");
    if (v.is_zero()) return {};
    if (!v.is_homogeneous() || v.degree() != 1)
      throw std::invalid_argument("multiply_into_quotient: degree mismatch, expected a linear form");
    SparseVector<F> out;
    for (const auto& [m, a] : v.terms()) {
      std::size_t var = 0;
      while (m[var] == 0) ++var;
      const auto& table = multiplication(q, var);
      for (const auto& [j, x] : c) {
        if (j >= table.size()) throw std::out_of_range("multiply_into_quotient: coordinate index");
        axpy(field(), out, field().mul(a, x), table[j]);
      }
    }
    return out;
  }

 private:
  struct Slot {
    std::once_flag piece_once;
    std::unique_ptr<DegreePiece> piece;
    std::once_flag mult_once;
    std::vector<std::vector<SparseVector<F>>> mult;
  };

  Slot& slot(int d) const {
    std::lock_guard lock(mutex_);
    auto& s = slots_[d];
    if (!s) s = std::make_unique<Slot>();
    return *s;
  }

  std::unique_ptr<DegreePiece> build_piece(int d) const {
    auto p = std::make_unique<DegreePiece>(DegreePiece{d, monomial_basis(ambient_dim(), d), {},
                                                       EchelonForm<F>(field(), 0), {}, {}});
    for (std::uint32_t i = 0; i < p->monomials.size(); ++i) p->index.emplace(p->monomials[i], i);
    std::vector<SparseVector<F>> rows;
    for (const auto& g : ideal_.generators()) {
      const int e = g.degree();
      if (e > d) continue;
      for (const auto& m : monomial_basis(ambient_dim(), d - e)) {
        SparseVector<F> row;
        for (const auto& [gm, c] : g.terms()) row.emplace_back(p->index.at(gm * m), c);
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
      }
    }
    const auto ncols = p->monomials.size();
    // leftmost pivots make the basis the standard monomials of the grevlex initial ideal
    p->ideal = reduced_echelon(SparseMatrix<F>::from_rows(field(), ncols, std::move(rows)),
                               PivotRule::leftmost_column);
    p->basis = p->ideal.free_columns();
    p->slot.assign(ncols, -1);
    for (std::size_t k = 0; k < p->basis.size(); ++k) p->slot[p->basis[k]] = static_cast<int>(k);
    return p;
  }

  std::vector<std::vector<SparseVector<F>>> build_multiplication(int q) const {
    const auto& src = piece(q);
    const auto& dst = piece(q + 1);
    std::vector<std::vector<SparseVector<F>>> out(num_vars());
    for (std::size_t var = 0; var < num_vars(); ++var) {
      out[var].reserve(src.basis.size());
      for (auto c : src.basis) {
        auto col = dst.index.at(src.monomials[c].times_variable(var));
        out[var].push_back(normal_form(q + 1, SparseVector<F>{{col, field().one()}}));
      }
    }
    return out;
  }

  Ideal<F> ideal_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<Slot>> slots_;
};

template <Field F>
std::size_t ideal_piece_dim(const GradedQuotient<F>& q, int d) {
  return q.ideal_dim(d);
}

/// Standard monomials of R_d; map coordinates with GradedQuotient::normal_form.
template <Field F>
std::vector<Monomial> quotient_basis(const GradedQuotient<F>& q, int d) {
  return q.basis(d);
}

template <Field F>
SparseVector<F> multiply_into_quotient(const GradedQuotient<F>& q, const Polynomial<F>& v,
                                       const SparseVector<F>& c, int degree) {
  return q.multiply(v, c, degree);
}

}  // namespace koszul
