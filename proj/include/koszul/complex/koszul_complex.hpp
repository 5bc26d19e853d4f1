#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "koszul/complex/exterior.hpp"
#include "koszul/polyring/graded_quotient.hpp"
#include "koszul/util/binomial.hpp"

namespace koszul {

/// Matrix of the Koszul differential
///   ^p V (x) R(a)_q  ->  ^{p-1} V (x) R(a)_{q+1},
///   e_{i_0} ^ ... ^ e_{i_{p-1}} (x) m  |->  sum_j (-1)^j e_{..^j..} (x) x_{i_j} m,
/// with V = S_1. Columns index the source and rows the target, both ordered
/// (wedge tuple, quotient basis) lexicographically. Module degree q lives in
/// ring degree q + a.
template <Field F>
SparseMatrix<F> koszul_matrix(const GradedQuotient<F>& quot, int twist, int p, int q) {
  const std::size_t n = quot.num_vars();
  const std::size_t src_dim = quot.dim(q + twist);
  const std::size_t dst_dim = quot.dim(q + 1 + twist);
  const std::size_t cols = binomial(static_cast<long long>(n), p) * src_dim;
  const std::size_t rows = p >= 1 ? binomial(static_cast<long long>(n), p - 1) * dst_dim : 0;
  if (rows == 0 || cols == 0) return SparseMatrix<F>(quot.field(), rows, cols);

  const F& field = quot.field();
  ExteriorBasis src(n, p), dst(n, p - 1);
  std::vector<typename SparseMatrix<F>::Entry> entries;
  std::vector<int> face(static_cast<std::size_t>(p - 1));
  for (std::size_t ti = 0; ti < src.size(); ++ti) {
    const auto& t = src[ti];
    for (int k = 0; k < p; ++k) {
      std::size_t w = 0;
      for (int i = 0; i < p; ++i)
        if (i != k) face[w++] = t[i];
      const std::size_t fi = dst.index_of(face);
      const auto& table = quot.multiplication(q + twist, static_cast<std::size_t>(t[k]));
      for (std::size_t j = 0; j < src_dim; ++j)
        for (const auto& [l, x] : table[j])
          entries.push_back({fi * dst_dim + l, ti * src_dim + j, k % 2 == 0 ? x : field.neg(x)});
    }
  }
  return SparseMatrix<F>(field, rows, cols, std::move(entries));
}

/// One cell of the Koszul cohomology computation.
struct KoszulCell {
  int p = 0;
  int q = 0;
  std::size_t kernel_dim = 0;     // dim ker delta_{p,q}
  std::size_t incoming_rank = 0;  // rank delta_{p+1,q-1}
  std::size_t dim = 0;            // dim K_{p,q}
};

/// Koszul complex of the graded module R(a) over S. Differential ranks are
/// computed once and shared by the two cells they border; every method is
/// safe to call concurrently.
template <Field F>
class KoszulComplex {
 public:
  explicit KoszulComplex(std::shared_ptr<const GradedQuotient<F>> quot, int twist = 0)
      : quot_(std::move(quot)), twist_(twist) {}

  const GradedQuotient<F>& quotient() const { return *quot_; }
  std::shared_ptr<const GradedQuotient<F>> quotient_ptr() const { return quot_; }
  int twist() const { return twist_; }
  std::size_t num_vars() const { return quot_->num_vars(); }

  std::size_t module_dim(int q) const { return quot_->dim(q + twist_); }
  std::size_t wedge_dim(int p) const { return binomial(static_cast<long long>(num_vars()), p); }
  std::size_t chain_dim(int p, int q) const { return wedge_dim(p) * module_dim(q); }

  SparseMatrix<F> differential(int p, int q) const { return koszul_matrix(*quot_, twist_, p, q); }

  /// rank delta_{p,q}; zero without assembly whenever source or target vanish.
  std::size_t differential_rank(int p, int q) const {
    if (p <= 0 || chain_dim(p, q) == 0 || chain_dim(p - 1, q + 1) == 0) return 0;
    RankSlot& s = slot(p, q);
    std::call_once(s.once, [&] { s.value = rank(differential(p, q)); });
    return s.value;
  }

  KoszulCell cell(int p, int q) const {
    KoszulCell c;
    c.p = p;
    c.q = q;
    if (p < 0 || chain_dim(p, q) == 0) return c;
    c.kernel_dim = chain_dim(p, q) - differential_rank(p, q);
    c.incoming_rank = differential_rank(p + 1, q - 1);
    c.dim = c.kernel_dim - c.incoming_rank;
    return c;
  }

  std::size_t dim(int p, int q) const { return cell(p, q).dim; }

 private:
  struct RankSlot {
    std::once_flag once;
    std::size_t value = 0;
  };

  RankSlot& slot(int p, int q) const {
    std::lock_guard lock(mutex_);
    auto& s = ranks_[{p, q}];
    if (!s) s = std::make_unique<RankSlot>();
    return *s;
  }

  std::shared_ptr<const GradedQuotient<F>> quot_;
  int twist_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<RankSlot>> ranks_;
};

/// dim K_{p,q} of R(a), i.e. dim Tor_p(R(a), k)_{p+q}.
template <Field F>
std::size_t koszul_dim(std::shared_ptr<const GradedQuotient<F>> quot, int twist, int p, int q) {
  return KoszulComplex<F>(std::move(quot), twist).dim(p, q);
}

}  // namespace koszul
