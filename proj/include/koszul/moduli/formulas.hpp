#pragma once

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "koszul/moduli/divisor_class.hpp"
#include "koszul/util/binomial.hpp"

namespace koszul::moduli {

inline long long brill_noether_number(long long g, long long r, long long d) { return g - (r + 1) * (g - d + r); }

inline long long clifford_index_bundle(long long deg, long long h0) {
  if (h0 < 0) throw std::invalid_argument("clifford_index_bundle: h0 must be >= 0");
  return deg - 2 * h0 + 2;
}

/// p with K_{p,1}(C, K_C) != 0 forced by a Clifford-index computing bundle.
inline long long gl_canonical_nonvanishing_index(long long g, long long cliff) {
  if (cliff < 0) throw std::invalid_argument("gl_canonical_nonvanishing_index: cliff must be >= 0");
  return g - cliff - 2;
}

/// Eisenbud-Harris class of the Brill-Noether divisor, with c_{g,d,r} = 1.
inline DivisorClass bn_divisor_class(int g, int r, int d) {
  if (brill_noether_number(g, r, d) != -1) throw std::invalid_argument("bn_divisor_class: requires rho(g,r,d) = -1");
  std::vector<std::optional<mpq_class>> b{mpq_class(g + 1, 6)};
  b[0]->canonicalize();
  for (int i = 1; i <= g / 2; ++i) b.emplace_back(mpq_class(i * (g - i)));
  return DivisorClass(g, mpq_class(g + 3), std::move(b));
}

namespace detail {

inline void require_sp(long s, long p, const char* where) {
  if (s < 1 || p < 0) throw std::invalid_argument(std::string(where) + ": requires s >= 1 and p >= 0");
}

}  // namespace detail

inline mpz_class f_poly(long s_, long p_) {
  detail::require_sp(s_, p_, "f_poly");
  const mpz_class s(s_), p(p_);
  const mpz_class p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  const mpz_class s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s, s7 = s6 * s;
  return (p4 + 24 * p2 + 8 * p3 + 32 * p + 16) * s7 + (p4 + 4 * p3 - 16 * p - 16) * s6 -
         (p4 + 7 * p3 + 13 * p2 - 12) * s5 - (p4 + 2 * p3 + p2 + 14 * p + 24) * s4 +
         (2 * p3 + 2 * p2 - 6 * p - 4) * s3 + (p3 + 17 * p2 + 50 * p + 41) * s2 + (7 * p2 + 18 * p + 9) * s +
         2 * p + 2;
}

inline mpz_class h_poly(long s_, long p_) {
  detail::require_sp(s_, p_, "h_poly");
  const mpz_class s(s_), p(p_);
  const mpz_class p2 = p * p, p3 = p2 * p;
  const mpz_class s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s;
  // the s^3 term carries a single minus sign
  return (p3 + 6 * p2 + 12 * p + 8) * s6 + (p3 + 2 * p2 - 4 * p - 8) * s5 - (p3 + 7 * p2 + 11 * p + 2) * s4 -
         (p3 - 5 * p) * s3 + (4 * p2 + 5 * p + 1) * s2 + (p2 + 7 * p + 11) * s + 4 * p + 2;
}

/// Genus of the virtual divisor Z_{g,p}: g = s(2s + sp + p + 1).
inline long virtual_genus(long s, long p) { return s * (2 * s + s * p + p + 1); }

inline mpq_class virtual_slope(long s, long p) {
  const mpz_class h = h_poly(s, p);
  if (h == 0) throw std::domain_error("virtual_slope: h(s,p) = 0");
  mpq_class v(6 * f_poly(s, p), mpz_class(p + 2) * s * h);
  v.canonicalize();
  return v;
}

/// The virtual class a lambda - b_0 delta_0 - b_1 delta_1 - ..., scaled so that
/// a = 6f and b_0 = (p+2) s h; b_1 = 12 b_0 - a, higher b_i are not known.
inline DivisorClass virtual_divisor_class(long s, long p) {
  const long g = virtual_genus(s, p);
  const mpq_class a(6 * f_poly(s, p));
  const mpq_class b0(mpz_class(p + 2) * s * h_poly(s, p));
  std::vector<std::optional<mpq_class>> b(static_cast<std::size_t>(g / 2 + 1));
  b[0] = b0;
  b[1] = 12 * b0 - a;
  return DivisorClass(static_cast<int>(g), a, std::move(b));
}

struct HurwitzClass {
  mpq_class lambda, delta0, delta1;
};

/// Class of Z_{2p+3,p}: (1/(p+2)) C(2p,p) (6(p+3) lambda - (p+2) delta_0 - 6(p+1) delta_1).
inline HurwitzClass hurwitz_class(long p) {
  if (p < 0) throw std::invalid_argument("hurwitz_class: requires p >= 0");
  mpq_class c(binomial_mpz(2 * p, p), mpz_class(p + 2));
  c.canonicalize();
  return {c * 6 * (p + 3), c * (p + 2), c * 6 * (p + 1)};
}

/// The same class on M_g, g = 2p + 3; only b_0 and b_1 are known.
inline DivisorClass hurwitz_divisor_class(long p) {
  const auto h = hurwitz_class(p);
  const int g = static_cast<int>(2 * p + 3);
  std::vector<std::optional<mpq_class>> b(static_cast<std::size_t>(g / 2 + 1));
  b[0] = h.delta0;
  b[1] = h.delta1;
  return DivisorClass(g, h.lambda, std::move(b));
}

inline mpq_class maximal_rank_slope(long s_) {
  if (s_ < 1) throw std::invalid_argument("maximal_rank_slope: requires s >= 1");
  const mpz_class s(s_);
  const mpz_class s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s, s7 = s6 * s;
  mpq_class v(3 * (16 * s7 - 16 * s6 + 12 * s5 - 24 * s4 - 4 * s3 + 41 * s2 + 9 * s + 2),
              s * (8 * s6 - 8 * s5 - 2 * s4 + s2 + 11 * s + 2));
  v.canonicalize();
  return v;
}

struct AbRanks {
  mpz_class rank_a, rank_b;
  bool equal = false;
};

/// rank A = (p+1) C(r+2, p+2), rank B = C(r,p) (-pd/r + 2d + 1 - g).
inline AbRanks ab_ranks(long g, long r, long d, long p) {
  if (r < 1) throw std::invalid_argument("ab_ranks: requires r >= 1");
  if (p < 0) throw std::invalid_argument("ab_ranks: requires p >= 0");
  AbRanks out;
  out.rank_a = mpz_class(p + 1) * binomial_mpz(r + 2, p + 2);
  mpq_class b = mpq_class(binomial_mpz(r, p)) * (mpq_class(-p * d, r) + 2 * d + 1 - g);
  b.canonicalize();
  if (b.get_den() != 1) throw std::domain_error("ab_ranks: rank B is not an integer for these inputs");
  out.rank_b = b.get_num();
  out.equal = out.rank_a == out.rank_b;
  return out;
}

struct KernelBundleNumerics {
  mpz_class rank, degree, minus_chi;
};

/// rk, deg and -chi of wedge^{p+1} M_L (x) K (x) L.
inline KernelBundleNumerics kernel_bundle_numerics(long g, long d, long r, long p) {
  if (p < 0 || p > r) throw std::invalid_argument("kernel_bundle_numerics: requires 0 <= p <= r");
  const mpz_class c = binomial_mpz(r - 1, p);
  const mpz_class rk = binomial_mpz(r, p + 1);
  return {rk, -mpz_class(d) * c, mpz_class(d) * c + mpz_class(g - 1) * rk};
}

struct NonvanishingThresholds {
  mpq_class threshold;            // (d+1-g)(d-g)/d
  std::optional<long> k_p1_max;   // K_{p,1} != 0 for 0 <= p <= this
  std::optional<std::pair<long, long>> k_p21_range;  // K_{p-1,2} != 0 for p in [lo, hi]
};

inline NonvanishingThresholds nonvan_thresholds(long g, long d) {
  if (d <= g) throw std::invalid_argument("nonvan_thresholds: requires d > g");
  NonvanishingThresholds t;
  t.threshold = mpq_class((d + 1 - g) * (d - g), d);
  t.threshold.canonicalize();
  // largest integer p with p < threshold - 1
  mpz_class below = t.threshold.get_num() - t.threshold.get_den();  // (threshold - 1) * den
  mpz_class pmax;
  mpz_cdiv_q(pmax.get_mpz_t(), below.get_mpz_t(), t.threshold.get_den().get_mpz_t());
  pmax -= 1;
  if (pmax >= 0) t.k_p1_max = pmax.get_si();
  mpz_class lo;
  mpz_cdiv_q(lo.get_mpz_t(), t.threshold.get_num().get_mpz_t(), t.threshold.get_den().get_mpz_t());
  if (lo <= d - g) t.k_p21_range = std::pair{lo.get_si(), d - g};
  return t;
}

/// rho - 1 - |C(r+n, n) - (nd + 1 - g)|.
inline long long smrc_expected_dim(long g, long r, long d, long n) {
  const long long rho = brill_noether_number(g, r, d);
  if (rho < 0 || rho >= r - 2) throw std::invalid_argument("smrc_expected_dim: requires 0 <= rho(g,r,d) < r - 2");
  if (g - d + r < 0) throw std::invalid_argument("smrc_expected_dim: requires g - d + r >= 0");
  if (n < 1) throw std::invalid_argument("smrc_expected_dim: requires n >= 1");
  const mpz_class diff = binomial_mpz(r + n, n) - mpz_class(n * d + 1 - g);
  return rho - 1 - std::llabs(diff.get_si());
}

/// What the expected dimension predicts for nu_n on every L in G^r_d(C).
inline std::string smrc_prediction(long g, long r, long d, long n) {
  const long long e = smrc_expected_dim(g, r, d, n);
  if (e >= 0) return "not of maximal rank along a locus of dimension " + std::to_string(e);
  const mpz_class diff = binomial_mpz(r + n, n) - mpz_class(n * d + 1 - g);
  if (diff > 0) return "surjective for every L in G^r_d(C)";
  if (diff < 0) return "injective for every L in G^r_d(C)";
  return "isomorphism for every L in G^r_d(C)";
}

/// p with K_{p,2}(C, L) predicted to vanish: [0, floor((r-2s)/(s+1))].
inline std::optional<std::pair<long, long>> minimal_syzygy_range(long r, long s) {
  if (r < 1 || s < 1) throw std::invalid_argument("minimal_syzygy_range: requires r, s >= 1");
  if (r - 2 * s < 0) return std::nullopt;
  return std::pair{0L, (r - 2 * s) / (s + 1)};
}

/// Decimal expansion by long division. Terminating values are exact; others
/// are cut after `digits` places and marked with "...".
inline std::string to_decimal(const mpq_class& q, unsigned digits = 12) {
  mpz_class num = q.get_num(), den = q.get_den();
  std::string out = num < 0 ? "-" : "";
  num = abs(num);
  mpz_class whole = num / den, rem = num % den;
  out += whole.get_str();
  if (rem == 0) return out;
  out += '.';
  for (unsigned i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    out += mpz_class(rem / den).get_str();
    rem %= den;
  }
  if (rem != 0) out += "...";
  return out;
}

}  // namespace koszul::moduli
