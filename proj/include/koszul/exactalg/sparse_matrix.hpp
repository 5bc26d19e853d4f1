#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "koszul/exactalg/field.hpp"

namespace koszul {

/// Sparse vector: (index, nonzero value) pairs sorted by index.
template <Field F>
using SparseVector = std::vector<std::pair<std::uint32_t, typename F::element>>;

/// target += factor * source, dropping cancelled entries.
template <Field F>
void axpy(const F& field, SparseVector<F>& target, const typename F::element& factor,
          const SparseVector<F>& source) {
  if (field.is_zero(factor) || source.empty()) return;
  SparseVector<F> out;
  out.reserve(target.size() + source.size());
  auto t = target.begin();
  auto s = source.begin();
  while (t != target.end() || s != source.end()) {
    if (s == source.end() || (t != target.end() && t->first < s->first)) {
      out.push_back(std::move(*t++));
    } else if (t == target.end() || s->first < t->first) {
      out.emplace_back(s->first, field.mul(factor, s->second));
      ++s;
    } else {
      auto v = field.add(t->second, field.mul(factor, s->second));
      if (!field.is_zero(v)) out.emplace_back(t->first, std::move(v));
      ++t;
      ++s;
    }
  }
  target = std::move(out);
}

/// Value at `index`, or zero.
template <Field F>
typename F::element sparse_at(const F& field, const SparseVector<F>& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  if (it != v.end() && it->first == index) return it->second;
  return field.zero();
}

/// Immutable sparse matrix over a single field, stored by rows.
template <Field F>
class SparseMatrix {
 public:
  using element = typename F::element;

  struct Entry {
    std::size_t row;
    std::size_t col;
    element value;
  };

  SparseMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows) {}

  /// Duplicate (row, col) entries are summed; zero results are dropped.
  SparseMatrix(F field, std::size_t rows, std::size_t cols, std::vector<Entry> entries)
      : SparseMatrix(std::move(field), rows, cols) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 0; i < entries.size();) {
      const auto r = entries[i].row, c = entries[i].col;
      if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix: entry out of range");
      element sum = entries[i].value;
      std::size_t j = i + 1;
      for (; j < entries.size() && entries[j].row == r && entries[j].col == c; ++j)
        sum = field_.add(sum, entries[j].value);
      if (!field_.is_zero(sum)) data_[r].emplace_back(static_cast<std::uint32_t>(c), std::move(sum));
      i = j;
    }
  }

  /// Takes rows that already satisfy the sparse-vector invariant.
  static SparseMatrix from_rows(F field, std::size_t cols, std::vector<SparseVector<F>> rows) {
    SparseMatrix m(std::move(field), rows.size(), cols);
    for (const auto& row : rows)
      if (!row.empty() && row.back().first >= cols)
        throw std::out_of_range("SparseMatrix: column out of range");
    m.data_ = std::move(rows);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVector<F>& row(std::size_t i) const { return data_[i]; }
  const std::vector<SparseVector<F>>& row_data() const { return data_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  element at(std::size_t r, std::size_t c) const {
    return sparse_at(field_, data_[r], static_cast<std::uint32_t>(c));
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) out.push_back({r, c, v});
    return out;
  }

  SparseMatrix transpose() const {
    std::vector<SparseVector<F>> t(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t[c].emplace_back(static_cast<std::uint32_t>(r), v);
    return from_rows(field_, rows_, std::move(t));
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<SparseVector<F>> data_;
};

/// Matrix product a * b.
template <Field F>
SparseMatrix<F> product(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  require_same_field(a.field(), b.field(), "product");
  if (a.cols() != b.rows()) throw std::invalid_argument("product: dimension mismatch");
  const F& field = a.field();
  std::vector<SparseVector<F>> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& [k, v] : a.row(i)) axpy(field, rows[i], v, b.row(k));
  return SparseMatrix<F>::from_rows(field, b.cols(), std::move(rows));
}

}  // namespace koszul
