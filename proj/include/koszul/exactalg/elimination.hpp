#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "koszul/exactalg/sparse_matrix.hpp"

namespace koszul {

/// How the next pivot is chosen during sparse elimination.
///  - markowitz: shortest active row (lowest index on ties), then within that
///    row the column with the fewest active entries (lowest index on ties).
///  - lowest_index: first nonzero of the lowest-index active row.
///  - leftmost_column: smallest column present in any active row (lowest row
///    on ties); the pivots are then the classical RREF leading columns.
enum class PivotRule { markowitz, lowest_index, leftmost_column };

/// Fully reduced row echelon data of a matrix's row space. Pivot rows are
/// normalized to 1 at their pivot and vanish at every other pivot column.
template <Field F>
class EchelonForm {
 public:
  using element = typename F::element;

  EchelonForm(F field, std::size_t cols) : field_(std::move(field)), cols_(cols), slot_(cols, -1) {}

  const F& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::uint32_t>& pivot_columns() const { return pivots_; }
  const SparseVector<F>& pivot_row(std::size_t k) const { return rows_[k]; }
  bool is_pivot(std::size_t col) const { return slot_[col] >= 0; }

  /// Columns that are not pivots, ascending.
  std::vector<std::uint32_t> free_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < cols_; ++c)
      if (slot_[c] < 0) out.push_back(c);
    return out;
  }

  /// Unique representative of v modulo the row space; its support avoids all pivots.
  SparseVector<F> reduce(SparseVector<F> v) const {
    std::vector<std::pair<int, element>> hits;
    for (const auto& [c, x] : v)
      if (slot_[c] >= 0) hits.emplace_back(slot_[c], x);
    for (const auto& [k, x] : hits) axpy(field_, v, field_.neg(x), rows_[k]);
    return v;
  }

  // Rows must arrive sorted by pivot column.
  void push(std::uint32_t pivot, SparseVector<F> row) {
    slot_[pivot] = static_cast<int>(pivots_.size());
    pivots_.push_back(pivot);
    rows_.push_back(std::move(row));
  }

 private:
  F field_;
  std::size_t cols_;
  std::vector<std::uint32_t> pivots_;
  std::vector<SparseVector<F>> rows_;
  std::vector<int> slot_;
};

namespace detail {

template <Field F>
class Eliminator {
 public:
  struct Pivot {
    std::size_t row;
    std::uint32_t col;
  };

  explicit Eliminator(const SparseMatrix<F>& m)
      : field_(m.field()), rows_(m.row_data()), active_(m.rows(), 0), col_count_(m.cols(), 0) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) continue;
      active_[r] = 1;
      for (const auto& e : rows_[r]) ++col_count_[e.first];
    }
  }

  void run(PivotRule rule) {
    for (;;) {
      auto pick = choose(rule);
      if (pick.row == npos) break;
      eliminate(pick);
    }
  }

  const std::vector<Pivot>& pivots() const { return pivots_; }

  // Gauss-Jordan back-substitution, then rows sorted by pivot column.
  EchelonForm<F> reduced(std::size_t cols) {
    for (std::size_t j = pivots_.size(); j-- > 0;) {
      const auto& pr = rows_[pivots_[j].row];
      for (std::size_t i = 0; i < j; ++i) {
        auto& target = rows_[pivots_[i].row];
        auto x = sparse_at(field_, target, pivots_[j].col);
        if (!field_.is_zero(x)) axpy(field_, target, field_.neg(x), pr);
      }
    }
    auto order = pivots_;
    std::sort(order.begin(), order.end(), [](const Pivot& a, const Pivot& b) { return a.col < b.col; });
    EchelonForm<F> out(field_, cols);
    for (const auto& p : order) out.push(p.col, std::move(rows_[p.row]));
    return out;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Pivot choose(PivotRule rule) const {
    Pivot best{npos, 0};
    if (rule == PivotRule::lowest_index) {
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (active_[r]) return {r, rows_[r].front().first};
      return best;
    }
    if (rule == PivotRule::leftmost_column) {
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (active_[r] && (best.row == npos || rows_[r].front().first < best.col))
          best = {r, rows_[r].front().first};
      return best;
    }
    std::size_t best_len = npos;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (active_[r] && rows_[r].size() < best_len) {
        best_len = rows_[r].size();
        best.row = r;
      }
    }
    if (best.row == npos) return best;
    std::size_t best_count = npos;
    for (const auto& e : rows_[best.row]) {
      if (col_count_[e.first] < best_count) {
        best_count = col_count_[e.first];
        best.col = e.first;
      }
    }
    return best;
  }

  void eliminate(const Pivot& p) {
    auto& pr = rows_[p.row];
    auto scale = field_.inv(sparse_at(field_, pr, p.col));
    for (auto& e : pr) e.second = field_.mul(e.second, scale);
    active_[p.row] = 0;
    for (const auto& e : pr) --col_count_[e.first];
    pivots_.push_back(p);
    if (col_count_[p.col] == 0) return;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      auto x = sparse_at(field_, rows_[r], p.col);
      if (field_.is_zero(x)) continue;
      for (const auto& e : rows_[r]) --col_count_[e.first];
      axpy(field_, rows_[r], field_.neg(x), pr);
      for (const auto& e : rows_[r]) ++col_count_[e.first];
      if (rows_[r].empty()) active_[r] = 0;
    }
  }

  F field_;
  std::vector<SparseVector<F>> rows_;
  std::vector<char> active_;
  std::vector<std::size_t> col_count_;
  std::vector<Pivot> pivots_;
};

}  // namespace detail

template <Field F>
std::size_t rank(const SparseMatrix<F>& m, PivotRule rule = PivotRule::markowitz) {
  if (m.is_zero()) return 0;
  detail::Eliminator<F> e(m);
  e.run(rule);
  return e.pivots().size();
}

template <Field F>
std::size_t kernel_dim(const SparseMatrix<F>& m, PivotRule rule = PivotRule::markowitz) {
  return m.cols() - rank(m, rule);
}

template <Field F>
EchelonForm<F> reduced_echelon(const SparseMatrix<F>& m, PivotRule rule = PivotRule::markowitz) {
  detail::Eliminator<F> e(m);
  e.run(rule);
  return e.reduced(m.cols());
}

}  // namespace koszul
