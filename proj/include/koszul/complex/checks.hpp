#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "koszul/complex/betti_table.hpp"
#include "koszul/util/binomial.hpp"

namespace koszul {

/// A check needs cells that the supplied table window does not contain.
class WindowTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NpResult {
  bool holds = false;
  std::vector<std::pair<int, int>> checked;  // (i, q) cells inspected
};

/// Property (N_p): b_{i,q} = 0 for all i <= p and q >= 2 inside the window.
inline NpResult check_np(const BettiTable& t, int p) {
  if (p < 0) throw std::invalid_argument("check_np: p must be >= 0");
  if (p > t.p_max() || t.q_max() < 2)
    throw WindowTooSmall("check_np: window must cover p <= " + std::to_string(p) + " and q = 2");
  NpResult r;
  r.holds = true;
  for (int i = 0; i <= p; ++i)
    for (int q = 2; q <= t.q_max(); ++q) {
      r.checked.emplace_back(i, q);
      if (t(i, q) != 0) r.holds = false;
    }
  return r;
}

/// Index of the dual group: K_{p,q}(X,L)^* = K_{r-n-p, n+1-q}(X, K_X, L).
inline std::pair<int, int> duality_index(int p, int q, int r, int n) { return {r - n - p, n + 1 - q}; }

/// For a canonical curve (L = K_X, r = g-1, n = 1) coefficients in K_X shift q by one,
/// so b_{p,q} pairs with b_{g-2-p, 3-q}.
inline std::pair<int, int> canonical_dual_cell(int p, int q, int g) {
  auto [dp, dq] = duality_index(p, q, g - 1, 1);
  return {dp, dq + 1};
}

/// Central symmetry b_{i,j} = b_{g-2-i, 3-j} of a canonical Betti table, with
/// every cell outside rows 0..3 and columns 0..g-2 required to vanish.
inline bool check_canonical_symmetry(const BettiTable& t, int g) {
  if (g < 2) throw std::invalid_argument("check_canonical_symmetry: genus must be >= 2");
  if (t.p_max() < g - 2 || t.q_max() < 3)
    throw WindowTooSmall("check_canonical_symmetry: window must cover 0.." + std::to_string(g - 2) + " x 0..3");
  for (int p = 0; p <= t.p_max(); ++p)
    for (int q = 0; q <= t.q_max(); ++q) {
      if (p > g - 2 || q > 3) {
        if (t(p, q) != 0) return false;
        continue;
      }
      auto [dp, dq] = canonical_dual_cell(p, q, g);
      if (t(p, q) != t(dp, dq)) return false;
    }
  return true;
}

struct IdentityCheck {
  mpq_class lhs;
  mpq_class rhs;
  bool ok = false;
};

/// p * C(d-g, p) * ((d+1-g)/(p+1) - d/(d-g)); requires d > g.
inline mpq_class nonspecial_koszul_difference(int g, int d, int p) {
  if (d <= g) throw std::invalid_argument("nonspecial_koszul_difference: requires d > g");
  mpq_class v = mpq_class(d + 1 - g, p + 1) - mpq_class(d, d - g);
  v.canonicalize();
  return mpq_class(p) * mpq_class(binomial_mpz(d - g, p)) * v;
}

/// dim K_{p,1} - dim K_{p-1,2} against the closed form for a non-special
/// embedding of degree d on a genus-g curve.
template <Field F>
IdentityCheck euler_identity_check(const KoszulComplex<F>& cx, int g, int d, int p) {
  if (d <= g) throw std::invalid_argument("euler_identity_check: requires d > g (non-special)");
  if (p < 1 || p > d - g) throw std::invalid_argument("euler_identity_check: requires 1 <= p <= d - g");
  IdentityCheck r;
  r.rhs = nonspecial_koszul_difference(g, d, p);
  if (r.rhs.get_den() != 1)
    throw std::domain_error("euler_identity_check: closed form is not an integer; metadata is inconsistent");
  r.lhs = mpq_class(static_cast<long>(cx.dim(p, 1))) - mpq_class(static_cast<long>(cx.dim(p - 1, 2)));
  r.ok = r.lhs == r.rhs;
  return r;
}

/// d C(r-1,p) + (g-1) C(r,p+1) - g C(r+1,p+1) + C(r+1,p)(r-d+g).
inline mpq_class three_term_koszul_sum(int g, int d, int r, int p) {
  mpz_class v = mpz_class(d) * binomial_mpz(r - 1, p) + mpz_class(g - 1) * binomial_mpz(r, p + 1) -
                mpz_class(g) * binomial_mpz(r + 1, p + 1) + binomial_mpz(r + 1, p) * mpz_class(r - d + g);
  return mpq_class(v);
}

/// dim K_{p,1} - dim K_{p-1,2} + dim K_{p-2,3} against the closed form valid
/// when L^2 is non-special.
template <Field F>
IdentityCheck euler_identity3_check(const KoszulComplex<F>& cx, int g, int d, int r, int p) {
  if (p < 1 || p > r) throw std::invalid_argument("euler_identity3_check: requires 1 <= p <= r");
  IdentityCheck c;
  c.rhs = three_term_koszul_sum(g, d, r, p);
  c.lhs = mpq_class(static_cast<long>(cx.dim(p, 1))) - mpq_class(static_cast<long>(cx.dim(p - 1, 2))) +
          mpq_class(static_cast<long>(p >= 2 ? cx.dim(p - 2, 3) : 0));
  c.ok = c.lhs == c.rhs;
  return c;
}

/// Dimension of S(-j)_d for S in r+1 variables: C(r+d-j, r), zero when d < j.
inline mpz_class shifted_free_dim(int r, int d, int j) {
  const int t = r + d - j;
  return t < r ? mpz_class(0) : binomial_mpz(t, r);
}

/// Alternating sum  sum_{p,q} (-1)^p b_{p,q} dim S(-(p+q))_d  over the window.
inline mpz_class hilbert_from_betti(const BettiTable& t, int r, int d) {
  mpz_class h = 0;
  for (int p = 0; p <= t.p_max(); ++p)
    for (int q = 0; q <= t.q_max(); ++q) {
      const auto b = t(p, q);
      if (b == 0) continue;
      mpz_class term = mpz_class(static_cast<unsigned long>(b)) * shifted_free_dim(r, d, p + q);
      h += (p % 2 == 0) ? term : mpz_class(-term);
    }
  return h;
}

/// The window certifies completeness when its last row is zero and its last
/// column is zero or lies beyond the top exterior power.
inline bool has_zero_border(const BettiTable& t, int r) {
  return t.row_is_zero(t.q_max()) && (t.p_max() >= r + 1 || t.column_is_zero(t.p_max()));
}

struct HilbertPoint {
  int degree;
  mpz_class predicted;
  std::size_t actual;
};

struct HilbertReconstruction {
  bool ok = false;
  std::vector<HilbertPoint> points;
};

/// Compares the Betti-table Hilbert function with dim R(a)_d for 0 <= d <= d_max.
template <Field F>
HilbertReconstruction hilbert_reconstruction_check(const BettiTable& t, const GradedQuotient<F>& quot, int d_max) {
  const int r = quot.ambient_dim();
  if (t.twist() > 0)
    throw std::invalid_argument("hilbert_reconstruction_check: R(a) with a > 0 has cells in negative degrees");
  if (!has_zero_border(t, r))
    throw WindowTooSmall("hilbert_reconstruction_check: window lacks a zero border");
  HilbertReconstruction out;
  out.ok = true;
  for (int d = 0; d <= d_max; ++d) {
    HilbertPoint pt{d, hilbert_from_betti(t, r, d), quot.dim(d + t.twist())};
    if (pt.predicted != mpz_class(static_cast<unsigned long>(pt.actual))) out.ok = false;
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace koszul
