#pragma once

#include <map>
#include <stdexcept>
#include <vector>

namespace koszul {

/// Basis e_{i_1} ^ ... ^ e_{i_p} of the p-th exterior power of an n-dimensional
/// space, as strictly increasing index tuples in lexicographic order.
class ExteriorBasis {
 public:
  ExteriorBasis(std::size_t n, int p) : n_(n), p_(p) {
    if (p < 0 || static_cast<std::size_t>(p) > n) return;
    std::vector<int> t(static_cast<std::size_t>(p));
    auto rec = [&](auto&& self, std::size_t pos, int start) -> void {
      if (pos == t.size()) {
        index_.emplace(t, tuples_.size());
        tuples_.push_back(t);
        return;
      }
      for (int i = start; i < static_cast<int>(n_); ++i) {
        t[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
  }

  std::size_t ambient() const { return n_; }
  int level() const { return p_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return tuples_[i]; }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }

  std::size_t index_of(const std::vector<int>& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw std::out_of_range("ExteriorBasis: not a basis tuple");
    return it->second;
  }

 private:
  std::size_t n_;
  int p_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, std::size_t> index_;
};

}  // namespace koszul
