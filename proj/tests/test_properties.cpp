// Property suites over the whole corpus. Runs on its own: ./test_properties

#include <catch_amalgamated.hpp>

#include "koszul/complex/checks.hpp"
#include "koszul/corpus/generators.hpp"
#include "koszul/polyring/ideal_io.hpp"

using namespace koszul;

namespace {

template <Field F>
std::vector<CurveRecord<F>> corpus(const F& field, std::uint64_t seed) {
  std::vector<CurveRecord<F>> out;
  for (int d = 2; d <= 5; ++d) out.push_back(rational_normal_curve(field, d));
  out.push_back(elliptic_normal_quartic(field, seed));
  out.push_back(elliptic_normal_quintic(field, seed));
  out.push_back(canonical_genus4(field, seed));
  out.push_back(canonical_genus5(field, seed));
  return out;
}

template <Field F>
std::shared_ptr<const GradedQuotient<F>> quot_of(const Ideal<F>& I) {
  return std::make_shared<const GradedQuotient<F>>(I);
}

template <Field F>
BettiTable full_table(const CurveRecord<F>& r) {
  return betti_table(quot_of(r.ideal), 0, r.ambient + 1, 3);
}

std::vector<std::size_t> random_permutation(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

// Same integer generators read over F_p.
Ideal<PrimeField> reduce_mod(const Ideal<RationalField>& I, std::uint32_t p) {
  auto text = format_ideal(I);
  text.replace(0, text.find('\n'), "field " + std::to_string(p));
  return std::get<Ideal<PrimeField>>(parse_ideal(text));
}

}  // namespace

TEST_CASE("d o d = 0 on every corpus ideal", "[property]") {
  auto check = [](const auto& rec) {
    KoszulComplex cx(quot_of(rec.ideal));
    const int n = static_cast<int>(rec.ideal.num_vars());
    for (int p = 2; p <= n; ++p)
      for (int q = 0; q <= 3; ++q) {
        auto d2 = cx.differential(p, q);
        auto d1 = cx.differential(p - 1, q + 1);
        CAPTURE(rec.tag, rec.genus, rec.degree, p, q);
        REQUIRE(d1.cols() == d2.rows());
        CHECK(product(d1, d2).is_zero());
      }
  };
  for (std::uint64_t seed : {0u, 1u, 42u})
    for (const auto& rec : corpus(PrimeField(), seed)) check(rec);
  for (const auto& rec : corpus(RationalField{}, 3)) check(rec);
}

TEST_CASE("Betti numbers are invariant under variable permutations", "[property]") {
  SplitMix64 rng(20240611);
  for (const auto& rec : corpus(PrimeField(), 11)) {
    const auto base = full_table(rec);
    for (int k = 0; k < 5; ++k) {
      const auto perm = random_permutation(rec.ideal.num_vars(), rng);
      const auto permuted = betti_table(quot_of(rec.ideal.permuted(perm)), 0, rec.ambient + 1, 3);
      CAPTURE(rec.genus, rec.degree, perm);
      CHECK(permuted == base);
    }
  }
}

TEST_CASE("Betti tables over Q and F_p agree on the same integer ideals", "[property]") {
  for (std::uint64_t seed : {2u, 5u}) {
    for (const auto& rec : corpus(RationalField{}, seed)) {
      if (rec.ambient > 4) continue;
      const auto over_q = full_table(rec);
      const auto mod_p = reduce_mod(rec.ideal, 32003);
      CAPTURE(rec.genus, rec.degree, seed);
      CHECK(betti_table(quot_of(mod_p), 0, rec.ambient + 1, 3) == over_q);
    }
  }
}

TEST_CASE("strand Euler characteristics match the chain groups", "[property]") {
  // Along p + q = k the Koszul complex is finite, so its Euler characteristic
  // is the same whether computed on chains or on cohomology.
  for (const auto& rec : corpus(PrimeField(), 8)) {
    KoszulComplex cx(quot_of(rec.ideal));
    const int n = static_cast<int>(rec.ideal.num_vars());
    for (int k = 0; k <= 5; ++k) {
      long long chains = 0, homology = 0;
      for (int p = 0; p <= std::min(n, k); ++p) {
        const long long sign = p % 2 == 0 ? 1 : -1;
        chains += sign * static_cast<long long>(cx.chain_dim(p, k - p));
        homology += sign * static_cast<long long>(cx.dim(p, k - p));
      }
      CAPTURE(rec.genus, rec.degree, k);
      CHECK(chains == homology);
    }
  }
}

TEST_CASE("Hilbert reconstruction holds across seeds", "[property]") {
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    for (const auto& rec : corpus(PrimeField(), seed)) {
      GradedQuotient<PrimeField> q(rec.ideal);
      CAPTURE(rec.genus, rec.degree, seed);
      // canonical tables reach row 3, so row 4 is the zero border
      const auto t = betti_table(quot_of(rec.ideal), 0, rec.ambient + 1, 4);
      CHECK(hilbert_reconstruction_check(t, q, 6).ok);
    }
}
