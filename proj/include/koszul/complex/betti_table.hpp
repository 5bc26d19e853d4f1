#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/complex/koszul_complex.hpp"
#include "koszul/util/parallel.hpp"

namespace koszul {

/// b_{p,q} = dim K_{p,q} over the window 0 <= p <= p_max, 0 <= q <= q_max.
/// Rows are q, columns p (so b_{p,q} sits in row q of the usual diagram).
class BettiTable {
 public:
  BettiTable() = default;
  BettiTable(int p_max, int q_max, int twist = 0) : p_max_(p_max), q_max_(q_max), twist_(twist) {
    if (p_max < 0 || q_max < 0) throw std::invalid_argument("BettiTable: negative window");
    cells_.assign(static_cast<std::size_t>((p_max + 1) * (q_max + 1)), 0);
  }

  int p_max() const { return p_max_; }
  int q_max() const { return q_max_; }
  int twist() const { return twist_; }

  bool covers(int p, int q) const { return p >= 0 && q >= 0 && p <= p_max_ && q <= q_max_; }

  /// Entries outside the window are absent rather than zero.
  std::optional<std::size_t> at(int p, int q) const {
    if (!covers(p, q)) return std::nullopt;
    return cells_[offset(p, q)];
  }

  std::size_t operator()(int p, int q) const {
    if (!covers(p, q))
      throw std::out_of_range("BettiTable: cell (" + std::to_string(p) + "," + std::to_string(q) +
                              ") outside window");
    return cells_[offset(p, q)];
  }

  void set(int p, int q, std::size_t value) {
    if (!covers(p, q)) throw std::out_of_range("BettiTable::set: outside window");
    cells_[offset(p, q)] = value;
  }

  bool row_is_zero(int q) const {
    for (int p = 0; p <= p_max_; ++p)
      if ((*this)(p, q) != 0) return false;
    return true;
  }
  bool column_is_zero(int p) const {
    for (int q = 0; q <= q_max_; ++q)
      if ((*this)(p, q) != 0) return false;
    return true;
  }

  /// Castelnuovo-Mumford regularity read off the window: the last nonzero row,
  /// valid only when the window has a zero last row.
  std::optional<int> regularity() const {
    if (!row_is_zero(q_max_)) return std::nullopt;
    int m = -1;
    for (int q = 0; q <= q_max_; ++q)
      if (!row_is_zero(q)) m = q;
    return m;
  }

  nlohmann::json to_json() const {
    nlohmann::json cells = nlohmann::json::array();
    for (int p = 0; p <= p_max_; ++p)
      for (int q = 0; q <= q_max_; ++q) cells.push_back({{"p", p}, {"q", q}, {"dim", (*this)(p, q)}});
    return {{"window", {{"pmax", p_max_}, {"qmax", q_max_}}}, {"twist", twist_}, {"cells", cells}};
  }

  static BettiTable from_json(const nlohmann::json& j) {
    BettiTable t(j.at("window").at("pmax").get<int>(), j.at("window").at("qmax").get<int>(),
                 j.at("twist").get<int>());
    for (const auto& c : j.at("cells")) t.set(c.at("p").get<int>(), c.at("q").get<int>(), c.at("dim").get<std::size_t>());
    return t;
  }

  /// Macaulay2-style diagram: columns p, rows q, zeros shown as '.'.
  std::string to_text() const {
    std::vector<std::string> header{""}, total{"total:"};
    std::vector<std::vector<std::string>> body;
    for (int p = 0; p <= p_max_; ++p) {
      header.push_back(std::to_string(p));
      std::size_t sum = 0;
      for (int q = 0; q <= q_max_; ++q) sum += (*this)(p, q);
      total.push_back(std::to_string(sum));
    }
    for (int q = 0; q <= q_max_; ++q) {
      std::vector<std::string> row{std::to_string(q) + ":"};
      for (int p = 0; p <= p_max_; ++p) {
        auto v = (*this)(p, q);
        row.push_back(v == 0 ? "." : std::to_string(v));
      }
      body.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    widen(header);
    widen(total);
    for (const auto& r : body) widen(r);
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& r) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += std::string(width[i] - r[i].size(), ' ') + r[i];
        if (i + 1 < r.size()) line += ' ';
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    };
    emit(header);
    emit(total);
    for (const auto& r : body) emit(r);
    return out.str();
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::size_t offset(int p, int q) const { return static_cast<std::size_t>(q * (p_max_ + 1) + p); }

  int p_max_ = 0;
  int q_max_ = 0;
  int twist_ = 0;
  std::vector<std::size_t> cells_;
};

/// Fills every cell of the window. Differential ranks are independent tasks
/// and run on `threads` workers; the result does not depend on scheduling.
template <Field F>
BettiTable betti_table(const KoszulComplex<F>& cx, int p_max, int q_max, unsigned threads = 1) {
  BettiTable table(p_max, q_max, cx.twist());
  const auto& quot = cx.quotient();
  // degree pieces and multiplication tables first, so rank tasks only read
  for (int d = std::max(0, cx.twist()); d <= q_max + cx.twist() + 1; ++d) {
    quot.piece(d);
    if (d <= q_max + cx.twist()) quot.multiplication(d, 0);
  }
  std::vector<std::pair<int, int>> jobs;
  for (int p = 1; p <= p_max + 1; ++p)
    for (int q = -1; q <= q_max; ++q) jobs.emplace_back(p, q);
  std::sort(jobs.begin(), jobs.end(), [&](const auto& a, const auto& b) {
    return cx.chain_dim(a.first, a.second) > cx.chain_dim(b.first, b.second);
  });
  parallel_for(jobs.size(), threads, [&](std::size_t i) { cx.differential_rank(jobs[i].first, jobs[i].second); });
  for (int p = 0; p <= p_max; ++p)
    for (int q = 0; q <= q_max; ++q) table.set(p, q, cx.dim(p, q));
  return table;
}

template <Field F>
BettiTable betti_table(std::shared_ptr<const GradedQuotient<F>> quot, int twist, int p_max, int q_max,
                       unsigned threads = 1) {
  return betti_table(KoszulComplex<F>(std::move(quot), twist), p_max, q_max, threads);
}

}  // namespace koszul
