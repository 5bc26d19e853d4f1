#pragma once

// Test curves with known invariants. Random families draw coefficients from
// SplitMix64 (Steele, Lea, Flood 2014; the constants below are the published
// ones), so any implementation can reproduce a stream from its seed:
//   F_p: rejection-sampled uniform on 1..p-1
//   Q:   uniform on {-16..16} \ {0}

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "koszul/conjectures/curve_record.hpp"
#include "koszul/polyring/graded_quotient.hpp"

namespace koszul {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

inline PrimeField::element random_nonzero(const PrimeField& f, SplitMix64& rng) {
  return static_cast<PrimeField::element>(1 + rng.below(f.modulus() - 1));
}

inline RationalField::element random_nonzero(const RationalField& f, SplitMix64& rng) {
  const auto k = static_cast<long long>(rng.below(32));
  return f.from_int(k < 16 ? k - 16 : k - 15);
}

/// Every monomial of degree d in n variables with a random nonzero coefficient.
template <Field F>
Polynomial<F> random_form(const F& field, std::size_t n, int d, SplitMix64& rng) {
  std::vector<typename Polynomial<F>::Term> terms;
  for (auto& m : monomial_basis(static_cast<int>(n) - 1, d)) terms.emplace_back(m, random_nonzero(field, rng));
  return Polynomial<F>(field, n, std::move(terms));
}

/// Expected dim R_q of a projectively normal curve: 1, r+1, then qd + 1 - g.
inline long long expected_hilbert_value(int g, int d, int r, int q) {
  if (q == 0) return 1;
  if (q == 1) return r + 1;
  return static_cast<long long>(q) * d + 1 - g;
}

/// True iff dim R_q = qd + 1 - g for 2 <= q <= q_max and dim R_1 = r + 1.
template <Field F>
bool hilbert_diagnostic(const CurveRecord<F>& rec, int q_max) {
  GradedQuotient<F> quot(rec.ideal);
  for (int q = 1; q <= q_max; ++q)
    if (static_cast<long long>(quot.dim(q)) != expected_hilbert_value(rec.genus, rec.degree, rec.ambient, q))
      return false;
  return true;
}

/// 2x2 minors x_i x_{j+1} - x_{i+1} x_j (i < j) of the 2 x d Hankel matrix.
template <Field F>
CurveRecord<F> rational_normal_curve(const F& field, int d) {
  if (d < 2) throw std::invalid_argument("rational_normal_curve: d must be >= 2");
  const auto n = static_cast<std::size_t>(d) + 1;
  std::vector<Polynomial<F>> gens;
  auto x = [&](int i) { return Polynomial<F>::variable(field, n, static_cast<std::size_t>(i)); };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) gens.push_back(x(i) * x(j + 1) - x(i + 1) * x(j));
  CurveRecord<F> rec{Ideal<F>(field, default_variable_names(n), std::move(gens)), 0, d, d, std::nullopt, 1,
                     "rational normal curve"};
  rec.validate();
  return rec;
}

template <Field F>
using SkewMatrix5 = std::vector<std::vector<Polynomial<F>>>;

/// Pfaffian of the 4x4 principal submatrix on indices a < b < c < e.
template <Field F>
Polynomial<F> pfaffian4(const SkewMatrix5<F>& m, int a, int b, int c, int e) {
  return m[a][b] * m[c][e] - m[a][c] * m[b][e] + m[a][e] * m[b][c];
}

/// The five 4x4 Pfaffians of a 5x5 skew matrix of linear forms; only the
/// entries above the diagonal are read.
template <Field F>
std::vector<Polynomial<F>> pfaffians5(const SkewMatrix5<F>& m) {
  std::vector<Polynomial<F>> out;
  for (int drop = 0; drop < 5; ++drop) {
    std::array<int, 4> idx{};
    int w = 0;
    for (int i = 0; i < 5; ++i)
      if (i != drop) idx[w++] = i;
    out.push_back(pfaffian4(m, idx[0], idx[1], idx[2], idx[3]));
  }
  return out;
}

/// Draws per seed before a random family gives up.
constexpr int max_corpus_attempts = 16;

namespace detail {

template <Field F>
void require_large_prime(const F& field, const char* family) {
  if constexpr (std::is_same_v<F, PrimeField>)
    if (field.modulus() <= 3) throw std::invalid_argument(std::string(family) + ": needs a prime p > 3");
}

template <Field F, class Draw>
CurveRecord<F> draw_until_valid(const F& field, Draw&& draw, const char* family, int max_attempts) {
  require_large_prime(field, family);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    CurveRecord<F> rec = draw();
    rec.validate();
    if (hilbert_diagnostic(rec, 5)) return rec;
  }
  throw std::runtime_error(std::string(family) + ": retries exhausted without a draw passing the Hilbert diagnostic");
}

}  // namespace detail

/// Two random quadrics in P^3: a genus-1 curve of degree 4.
template <Field F>
CurveRecord<F> elliptic_normal_quartic(const F& field, std::uint64_t seed, int max_attempts = max_corpus_attempts) {
  SplitMix64 rng(seed);
  return detail::draw_until_valid<F>(
      field,
      [&] {
        std::vector<Polynomial<F>> gens{random_form(field, 4, 2, rng), random_form(field, 4, 2, rng)};
        return CurveRecord<F>{Ideal<F>(field, default_variable_names(4), std::move(gens)), 1, 4, 3, 2, 2,
                              "elliptic normal quartic"};
      },
      "elliptic_normal_quartic", max_attempts);
}

/// Pfaffians of a random 5x5 skew matrix of linear forms in P^4: genus 1, degree 5.
template <Field F>
CurveRecord<F> elliptic_normal_quintic(const F& field, std::uint64_t seed, int max_attempts = max_corpus_attempts) {
  SplitMix64 rng(seed);
  return detail::draw_until_valid<F>(
      field,
      [&] {
        SkewMatrix5<F> m(5, std::vector<Polynomial<F>>(5, Polynomial<F>(field, 5)));
        for (int i = 0; i < 5; ++i)
          for (int j = i + 1; j < 5; ++j) m[i][j] = random_form(field, 5, 1, rng);
        return CurveRecord<F>{Ideal<F>(field, default_variable_names(5), pfaffians5(m)), 1, 5, 4, 3, 2,
                              "elliptic normal quintic"};
      },
      "elliptic_normal_quintic", max_attempts);
}

/// Random quadric and cubic in P^3: a canonical curve of genus 4.
template <Field F>
CurveRecord<F> canonical_genus4(const F& field, std::uint64_t seed, int max_attempts = max_corpus_attempts) {
  SplitMix64 rng(seed);
  return detail::draw_until_valid<F>(
      field,
      [&] {
        std::vector<Polynomial<F>> gens{random_form(field, 4, 2, rng), random_form(field, 4, 3, rng)};
        return CurveRecord<F>{Ideal<F>(field, default_variable_names(4), std::move(gens)), 4, 6, 3, 1, 3,
                              "canonical"};
      },
      "canonical_genus4", max_attempts);
}

/// Three random quadrics in P^4: a canonical curve of genus 5.
template <Field F>
CurveRecord<F> canonical_genus5(const F& field, std::uint64_t seed, int max_attempts = max_corpus_attempts) {
  SplitMix64 rng(seed);
  return detail::draw_until_valid<F>(
      field,
      [&] {
        std::vector<Polynomial<F>> gens{random_form(field, 5, 2, rng), random_form(field, 5, 2, rng),
                                        random_form(field, 5, 2, rng)};
        return CurveRecord<F>{Ideal<F>(field, default_variable_names(5), std::move(gens)), 5, 8, 4, 2, 4,
                              "canonical"};
      },
      "canonical_genus5", max_attempts);
}

/// Identifies a corpus member; identical specs give identical ideals.
struct CorpusSpec {
  std::string family;                 // rnc, elliptic-quartic, elliptic-quintic, genus4, genus5
  int parameter = 0;                  // degree d for rnc
  std::optional<std::uint32_t> prime; // nullopt selects Q
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& corpus_families() {
  static const std::vector<std::string> names{"rnc", "elliptic-quartic", "elliptic-quintic", "genus4", "genus5"};
  return names;
}

template <Field F>
CurveRecord<F> generate(const F& field, const CorpusSpec& spec) {
  if (spec.family == "rnc") return rational_normal_curve(field, spec.parameter);
  if (spec.family == "elliptic-quartic") return elliptic_normal_quartic(field, spec.seed);
  if (spec.family == "elliptic-quintic") return elliptic_normal_quintic(field, spec.seed);
  if (spec.family == "genus4") return canonical_genus4(field, spec.seed);
  if (spec.family == "genus5") return canonical_genus5(field, spec.seed);
  throw std::invalid_argument("unknown corpus family '" + spec.family + "'");
}

inline AnyCurveRecord generate(const CorpusSpec& spec) {
  if (spec.prime) return generate(PrimeField(*spec.prime), spec);
  return generate(RationalField{}, spec);
}

}  // namespace koszul
