#pragma once

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

namespace koszul {

/// C(n, k) for integers, zero unless 0 <= k <= n.
inline std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// Arbitrary-precision C(n, k), zero unless 0 <= k <= n.
inline mpz_class binomial_mpz(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace koszul
