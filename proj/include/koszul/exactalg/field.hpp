#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace koszul {

/// Thrown when values from two different coefficient fields meet.
class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Prime field F_p with p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using element = std::uint32_t;

  static constexpr std::uint32_t default_modulus = 32003;

  explicit PrimeField(std::uint32_t p = default_modulus) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                  " is not a prime below 2^31");
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t modulus() const { return p_; }
  std::string name() const { return std::to_string(p_); }
  bool is_rational() const { return false; }

  element zero() const { return 0; }
  element one() const { return 1; }
  bool is_zero(element a) const { return a == 0; }
  bool is_one(element a) const { return a == 1; }

  element from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<element>(m);
  }
  element from_mpz(const mpz_class& v) const {
    mpz_class m = v % p_;
    if (m < 0) m += p_;
    return static_cast<element>(m.get_ui());
  }

  element add(element a, element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  element sub(element a, element b) const { return a >= b ? a - b : a + p_ - b; }
  element neg(element a) const { return a == 0 ? 0 : p_ - a; }
  element mul(element a, element b) const {
    return static_cast<element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  element inv(element a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    return from_int(t);
  }
  element div(element a, element b) const { return mul(a, inv(b)); }

  /// Symmetric integer representative in (-p/2, p/2].
  mpz_class lift(element a) const {
    long long v = a;
    if (v > static_cast<long long>(p_ / 2)) v -= p_;
    return mpz_class(static_cast<long>(v));
  }
  std::string to_string(element a) const { return lift(a).get_str(); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP.
class RationalField {
 public:
  using element = mpq_class;

  std::string name() const { return "Q"; }
  bool is_rational() const { return true; }

  element zero() const { return 0; }
  element one() const { return 1; }
  bool is_zero(const element& a) const { return sgn(a) == 0; }
  bool is_one(const element& a) const { return a == 1; }

  element from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
  element from_mpz(const mpz_class& v) const { return mpq_class(v); }

  element add(const element& a, const element& b) const { return a + b; }
  element sub(const element& a, const element& b) const { return a - b; }
  element neg(const element& a) const { return -a; }
  element mul(const element& a, const element& b) const { return a * b; }
  element inv(const element& a) const {
    if (sgn(a) == 0) throw std::domain_error("RationalField: inverse of zero");
    return 1 / a;
  }
  element div(const element& a, const element& b) const { return a * inv(b); }

  std::string to_string(const element& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = requires(const F& f, const typename F::element& a, long long n) {
  typename F::element;
  { f.zero() } -> std::convertible_to<typename F::element>;
  { f.one() } -> std::convertible_to<typename F::element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.from_int(n) } -> std::convertible_to<typename F::element>;
  { f.add(a, a) } -> std::convertible_to<typename F::element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::element>;
  { f.neg(a) } -> std::convertible_to<typename F::element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::element>;
  { f.inv(a) } -> std::convertible_to<typename F::element>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.name() } -> std::convertible_to<std::string>;
  { f == f } -> std::convertible_to<bool>;
};

template <Field F>
void require_same_field(const F& a, const F& b, const char* where) {
  if (!(a == b))
    throw FieldMismatch(std::string(where) + ": mixed field contexts (" + a.name() + " vs " +
                        b.name() + ")");
}

}  // namespace koszul
