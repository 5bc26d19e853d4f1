#include <catch_amalgamated.hpp>

#include "koszul/conjectures/checks.hpp"
#include "koszul/corpus/generators.hpp"

using namespace koszul;

namespace {

using Rec = CurveRecord<PrimeField>;

std::shared_ptr<const GradedQuotient<PrimeField>> quot_of(const Rec& r) {
  return std::make_shared<const GradedQuotient<PrimeField>>(r.ideal);
}

BettiTable table_of(const Rec& r, int pmax, int qmax) { return betti_table(quot_of(r), 0, pmax, qmax); }

const Rec& genus4() {
  static const auto r = canonical_genus4(PrimeField(), 42);
  return r;
}
const Rec& genus5() {
  static const auto r = canonical_genus5(PrimeField(), 42);
  return r;
}
const Rec& quintic() {
  static const auto r = elliptic_normal_quintic(PrimeField(), 42);
  return r;
}
const Rec& quartic() {
  static const auto r = elliptic_normal_quartic(PrimeField(), 42);
  return r;
}

// b_{p,q} -> b_{g-2-p, 3-q}
BettiTable reflect(const BettiTable& t, int g) {
  BettiTable out(t.p_max(), t.q_max(), t.twist());
  for (int p = 0; p <= t.p_max(); ++p)
    for (int q = 0; q <= t.q_max(); ++q) {
      const int dp = g - 2 - p, dq = 3 - q;
      out.set(p, q, t.covers(dp, dq) ? t(dp, dq) : 0);
    }
  return out;
}

// Every cell witness matches the table it came from.
void witnesses_consistent(const Verdict& v, const BettiTable& t) {
  if (!v.outcome) CHECK_FALSE(v.witnesses.empty());
  for (const auto& w : v.witnesses)
    if (w.cell) CHECK(static_cast<long long>(t(w.cell->first, w.cell->second)) == w.computed);
}

}  // namespace

TEST_CASE("Green's conjecture on canonical curves", "[conjectures]") {
  auto t4 = table_of(genus4(), 2, 3);
  auto v4 = check_green(genus4(), t4);
  CHECK(v4.outcome);
  witnesses_consistent(v4, t4);
  REQUIRE(v4.witnesses.size() == 2);
  CHECK(v4.witnesses[0].quantity == "b_{0,2}");
  CHECK(v4.witnesses[1].quantity == "b_{1,1}");
  CHECK(v4.witnesses[1].computed == 1);

  auto t5 = table_of(genus5(), 3, 3);
  auto v5 = check_green(genus5(), t5);
  CHECK(v5.outcome);
  CHECK(v5.witnesses.size() == 3);  // b02, b12, b11
  witnesses_consistent(v5, t5);

  auto wrong = genus4();
  wrong.clifford = 2;
  auto vw = check_green(wrong, t4);
  CHECK_FALSE(vw.outcome);
  bool saw = false;
  for (const auto& w : vw.witnesses)
    if (w.cell == std::pair{1, 2}) {
      saw = true;
      CHECK_FALSE(w.satisfied);
    }
  CHECK(saw);

  auto unknown = genus4();
  unknown.clifford.reset();
  CHECK_THROWS_AS(check_green(unknown, t4), MetadataError);
  CHECK_THROWS_AS(check_green(quintic(), table_of(quintic(), 3, 3)), MetadataError);
  CHECK_THROWS_AS(check_green(genus5(), table_of(genus5(), 0, 3)), WindowTooSmall);
}

TEST_CASE("Green's check is invariant under the canonical symmetry", "[conjectures][property]") {
  for (const Rec* r : {&genus4(), &genus5()}) {
    auto t = table_of(*r, r->genus - 2, 3);
    CHECK(check_green(*r, reflect(t, r->genus)).outcome == check_green(*r, t).outcome);
    auto wrong = *r;
    wrong.clifford = *r->clifford + 1;
    CHECK(check_green(wrong, reflect(t, r->genus)).outcome == check_green(wrong, t).outcome);
  }
}

TEST_CASE("gonality conjecture", "[conjectures]") {
  auto tq = table_of(quintic(), 4, 2);
  auto vq = check_gonality_conjecture(quintic(), tq);
  CHECK(vq.outcome);
  witnesses_consistent(vq, tq);
  CHECK(vq.witnesses[0].cell == std::pair{3, 1});
  CHECK(vq.witnesses[1].cell == std::pair{2, 1});
  CHECK(vq.witnesses[1].computed == 5);

  auto t4 = table_of(quartic(), 3, 2);
  auto v4 = check_gonality_conjecture(quartic(), t4);
  CHECK(v4.outcome);
  CHECK(v4.witnesses[1].computed == 2);

  for (int d = 2; d <= 5; ++d) {
    auto rnc = rational_normal_curve(PrimeField(), d);
    auto t = table_of(rnc, d, 2);
    auto v = check_gonality_conjecture(rnc, t);
    CAPTURE(d);
    CHECK(v.outcome);
    CHECK(v.witnesses[1].computed == d - 1);
  }

  auto g4 = genus4();
  g4.gonality.reset();
  CHECK_THROWS_AS(check_gonality_conjecture(g4, table_of(genus4(), 2, 2)), MetadataError);
}

TEST_CASE("Prym-Green index arithmetic", "[conjectures]") {
  // synthetic genus-6 record in P^4; only the table matters here
  Rec r{quintic().ideal, 6, 10, 4, std::nullopt, std::nullopt, "prym-canonical level 2"};
  BettiTable t(3, 3);
  t.set(0, 0, 1);
  t.set(1, 1, 5);  // only b_{0,2} decides
  auto v = check_prym_green(r, t);
  CHECK(v.outcome);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].cell == std::pair{0, 2});
  t.set(0, 2, 1);
  CHECK_FALSE(check_prym_green(r, t).outcome);

  Rec r8{Ideal<PrimeField>(PrimeField(), default_variable_names(7), {}), 8, 14, 6, std::nullopt, std::nullopt,
         "prym-canonical"};
  BettiTable t8(3, 3);
  auto v8 = check_prym_green(r8, t8);
  CHECK(v8.witnesses[0].cell == std::pair{1, 2});

  auto mislabeled = genus4();
  mislabeled.tag = "prym-canonical";
  CHECK_THROWS_AS(check_prym_green(mislabeled, table_of(genus4(), 2, 3)), MetadataError);
  CHECK_THROWS_AS(check_prym_green(genus4(), table_of(genus4(), 2, 3)), MetadataError);
}

TEST_CASE("maximal rank", "[conjectures]") {
  {
    GradedQuotient<PrimeField> q(quintic().ideal);
    auto v = check_max_rank(quintic(), q, 2);
    CHECK(v.outcome);
    CHECK(v.witnesses[0].computed == 5);
    CHECK_THAT(v.notes[0], Catch::Matchers::ContainsSubstring("15 -> 10, surjective"));
  }
  {
    auto tc = rational_normal_curve(PrimeField(), 3);
    GradedQuotient<PrimeField> q(tc.ideal);
    auto v = check_max_rank(tc, q, 2);
    CHECK(v.outcome);
    CHECK(v.witnesses[0].computed == 3);
  }
  {
    GradedQuotient<PrimeField> q(genus4().ideal);
    auto v = check_max_rank(genus4(), q, 2);
    CHECK(v.outcome);
    CHECK(v.witnesses[0].computed == 1);
    CHECK_THAT(v.notes[0], Catch::Matchers::ContainsSubstring("10 -> 9"));
  }
  {
    // zero ideal in P^3 with curve metadata g = 0, d = 3: R_2 is too big
    Rec bogus{Ideal<PrimeField>(PrimeField(), default_variable_names(4), {}), 0, 3, 3, std::nullopt, 1, "bogus"};
    GradedQuotient<PrimeField> q(bogus.ideal);
    CHECK_THROWS_AS(check_max_rank(bogus, q, 2), MetadataError);
  }
}

TEST_CASE("max rank at n = 2 agrees with N_0 on canonical curves", "[conjectures][property]") {
  for (const Rec* r : {&genus4(), &genus5()}) {
    GradedQuotient<PrimeField> q(r->ideal);
    auto t = table_of(*r, 1, 2);
    CHECK(check_max_rank(*r, q, 2).outcome == check_np(t, 0).holds);
  }
}

TEST_CASE("predicted nonvanishing from a decomposition", "[conjectures]") {
  CHECK(predict_nonvanishing(6, {3, 2, 3, 2}) == std::pair{1, 1});
  CHECK(predict_nonvanishing(5, {2, 2, 3, 3}) == std::pair{2, 1});
  CHECK_THROWS_AS(predict_nonvanishing(5, {2, 1, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(predict_nonvanishing(5, {2, 2, 2, 3}), std::invalid_argument);

  auto v = check_nonvanishing(genus4(), {3, 2, 3, 2}, table_of(genus4(), 2, 2));
  CHECK(v.outcome);
  CHECK(v.witnesses[0].computed == 1);
  auto w = check_nonvanishing(quintic(), {2, 2, 3, 3}, table_of(quintic(), 3, 2));
  CHECK(w.outcome);
  CHECK(w.witnesses[0].computed == 5);
}

TEST_CASE("table-level verdicts and JSON", "[conjectures]") {
  auto t4 = table_of(genus4(), 2, 3);
  CHECK(np_verdict(t4, 0).outcome);
  CHECK_FALSE(np_verdict(t4, 1).outcome);
  CHECK(symmetry_verdict(t4, 4).outcome);
  CHECK_FALSE(symmetry_verdict(table_of(quintic(), 3, 3), 5).outcome);

  auto tc = rational_normal_curve(PrimeField(), 3);
  KoszulComplex<PrimeField> cx(quot_of(tc));
  auto e = identity_verdict("euler", euler_identity_check(cx, 0, 3, 1), 1, "L non-special");
  CHECK(e.outcome);
  CHECK(e.witnesses[0].expected == "3");

  GradedQuotient<PrimeField> q(tc.ideal);
  auto h = hilbert_verdict(betti_table(quot_of(tc), 0, 4, 2), q, 4);
  CHECK(h.outcome);
  CHECK(h.witnesses.size() == 5);

  auto j = check_green(genus4(), t4).to_json();
  CHECK(j["statement"] == "green");
  CHECK(j["outcome"] == true);
  CHECK(j["witnesses"][0]["p"] == 0);
  CHECK(j["witnesses"][0]["q"] == 2);
  CHECK(j["witnesses"][0]["expected"] == "0");
  CHECK(j["assumptions"].size() == 2);
  CHECK(j["notes"][0].get<std::string>().find("F_32003") != std::string::npos);
  CHECK_FALSE(h.to_json()["witnesses"][0].contains("p"));
}
