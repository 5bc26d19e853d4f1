#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "koszul/complex/checks.hpp"
#include "koszul/conjectures/curve_record.hpp"
#include "koszul/conjectures/verdict.hpp"
#include "koszul/util/binomial.hpp"

namespace koszul {

/// Metadata required by a checker is absent or contradicts its hypotheses.
class MetadataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline long long cell(const BettiTable& t, int p, int q, const char* who) {
  auto v = t.at(p, q);
  if (!v)
    throw WindowTooSmall(std::string(who) + ": window does not contain b_{" + std::to_string(p) + "," +
                         std::to_string(q) + "}");
  return static_cast<long long>(*v);
}

inline std::string field_note(const PrimeField& f) {
  return "computed over F_" + std::to_string(f.modulus()) +
         "; one instance, generic statements follow only by semicontinuity";
}
inline std::string field_note(const RationalField&) { return "computed over Q on one instance"; }

}  // namespace detail

/// Green: b_{p,2} = 0 for p < Cliff(C), and b_{g-Cliff-2,1} != 0.
template <Field F>
Verdict check_green(const CurveRecord<F>& rec, const BettiTable& t) {
  if (!rec.is_canonical()) throw MetadataError("check_green: curve is not tagged canonical");
  if (!rec.clifford) throw MetadataError("check_green: Clifford index unknown");
  const int g = rec.genus, c = *rec.clifford;
  Verdict v;
  v.statement = "green";
  v.assumptions = {"canonical embedding, g = " + std::to_string(g), "Cliff(C) = " + std::to_string(c) + " (declared)"};
  for (int p = 0; p < c; ++p) v.expect_zero(p, 2, detail::cell(t, p, 2, "check_green"));
  const int np = g - c - 2;
  if (np >= 0) v.expect_nonzero(np, 1, detail::cell(t, np, 1, "check_green"));
  v.settle();
  v.notes.push_back(detail::field_note(rec.ideal.field()));
  return v;
}

/// Gonality: b_{h0-gon,1} = 0 and b_{h0-gon-1,1} != 0 for a non-special L.
template <Field F>
Verdict check_gonality_conjecture(const CurveRecord<F>& rec, const BettiTable& t) {
  if (!rec.gonality) throw MetadataError("check_gonality_conjecture: gonality unknown");
  const int h0 = rec.degree - rec.genus + 1, gon = *rec.gonality;
  if (h0 != rec.ambient + 1) throw MetadataError("check_gonality_conjecture: h0(L) = d - g + 1 must equal r + 1");
  Verdict v;
  v.statement = "gonality";
  v.assumptions = {"L non-special (declared)", "h0(L) = " + std::to_string(h0),
                   "gon(C) = " + std::to_string(gon) + " (declared)"};
  v.expect_zero(h0 - gon, 1, detail::cell(t, h0 - gon, 1, "check_gonality_conjecture"));
  if (h0 - gon - 1 >= 0) v.expect_nonzero(h0 - gon - 1, 1, detail::cell(t, h0 - gon - 1, 1, "check_gonality_conjecture"));
  v.settle();
  v.notes.push_back(detail::field_note(rec.ideal.field()));
  return v;
}

/// Prym-Green: for g = 2d - 2 and the embedding by K_C (x) eta, b_{d-4,2} = 0.
/// The neighbours b_{d-4,1} and b_{d-3,2} are reported but do not decide the outcome.
template <Field F>
Verdict check_prym_green(const CurveRecord<F>& rec, const BettiTable& t) {
  if (rec.tag.rfind("prym-canonical", 0) != 0) throw MetadataError("check_prym_green: curve is not tagged prym-canonical");
  const int g = rec.genus;
  if (g < 6 || g % 2 != 0) throw MetadataError("check_prym_green: requires even g >= 6");
  if (rec.degree != 2 * g - 2 || rec.ambient != g - 2)
    throw MetadataError("check_prym_green: K_C (x) eta has degree 2g - 2 and embeds in P^{g-2}");
  const int d = (g + 2) / 2;
  Verdict v;
  v.statement = "prym-green";
  v.assumptions = {"ideal presents C in P^{g-2} by K_C (x) eta (declared: " + rec.tag + ")"};
  v.expect_zero(d - 4, 2, detail::cell(t, d - 4, 2, "check_prym_green"));
  v.settle();
  const auto left = t.at(d - 4, 1), right = t.at(d - 3, 2);
  if (left) v.notes.push_back("b_{" + std::to_string(d - 4) + ",1} = " + std::to_string(*left) + " (expected >= 1)");
  if (right) v.notes.push_back("b_{" + std::to_string(d - 3) + ",2} = " + std::to_string(*right) + " (expected >= 1)");
  v.notes.push_back(detail::field_note(rec.ideal.field()));
  return v;
}

/// Maximal rank of nu_n : Sym^n H0(L) -> H0(L^n) with kernel I_n.
template <Field F>
Verdict check_max_rank(const CurveRecord<F>& rec, const GradedQuotient<F>& quot, int n) {
  if (n < 2) throw std::invalid_argument("check_max_rank: requires n >= 2");
  const long long src = static_cast<long long>(binomial(rec.ambient + n, n));
  const long long h0 = static_cast<long long>(n) * rec.degree + 1 - rec.genus;
  const long long image = static_cast<long long>(quot.dim(n));
  if (image > h0)
    throw MetadataError("check_max_rank: dim R_n = " + std::to_string(image) + " exceeds nd + 1 - g = " +
                        std::to_string(h0));
  const long long kernel = static_cast<long long>(ideal_piece_dim(quot, n));
  const long long expected = std::max(0LL, src - h0);
  Verdict v;
  v.statement = "maxrank";
  v.assumptions = {"L non-special in degree n (declared)", "ideal saturated through degree " + std::to_string(n)};
  v.expect_value("dim I_" + std::to_string(n), std::to_string(expected), kernel, kernel == expected);
  v.settle();
  std::string kind = "neither injective nor surjective";
  if (kernel == 0 && image == h0) kind = "bijective";
  else if (kernel == 0) kind = "injective";
  else if (image == h0) kind = "surjective";
  v.notes.push_back("nu_" + std::to_string(n) + ": " + std::to_string(src) + " -> " + std::to_string(h0) + ", " + kind);
  v.notes.push_back(detail::field_note(rec.ideal.field()));
  return v;
}

struct Decomposition {
  int d1 = 0, h1 = 0, d2 = 0, h2 = 0;
};

/// L = L1 + L2 with h0(L_i) = r_i + 1 >= 2 forces K_{r1+r2-1,1}(C, L) != 0.
inline std::pair<int, int> predict_nonvanishing(int degree, const Decomposition& dec) {
  if (dec.h1 < 2 || dec.h2 < 2) throw std::invalid_argument("predict_nonvanishing: requires h0(L_i) >= 2");
  if (dec.d1 + dec.d2 != degree) throw std::invalid_argument("predict_nonvanishing: d1 + d2 must equal deg L");
  return {(dec.h1 - 1) + (dec.h2 - 1) - 1, 1};
}

template <Field F>
Verdict check_nonvanishing(const CurveRecord<F>& rec, const Decomposition& dec, const BettiTable& t) {
  auto [p, q] = predict_nonvanishing(rec.degree, dec);
  Verdict v;
  v.statement = "nonvanishing";
  v.assumptions = {"L = L1 + L2 with (deg, h0) = (" + std::to_string(dec.d1) + "," + std::to_string(dec.h1) + ") + (" +
                   std::to_string(dec.d2) + "," + std::to_string(dec.h2) + ") (declared)"};
  v.expect_nonzero(p, q, detail::cell(t, p, q, "check_nonvanishing"));
  v.settle();
  return v;
}

// Verdict forms of the table-level checks, so every check has one output shape.

inline Verdict np_verdict(const BettiTable& t, int p) {
  auto r = check_np(t, p);
  Verdict v;
  v.statement = "np";
  v.assumptions = {"p = " + std::to_string(p)};
  for (auto [i, q] : r.checked) v.expect_zero(i, q, static_cast<long long>(t(i, q)));
  v.settle();
  return v;
}

inline Verdict symmetry_verdict(const BettiTable& t, int g) {
  const bool ok = check_canonical_symmetry(t, g);
  Verdict v;
  v.statement = "symmetry";
  v.assumptions = {"canonical curve of genus " + std::to_string(g)};
  for (int p = 0; p <= t.p_max(); ++p)
    for (int q = 0; q <= t.q_max(); ++q) {
      const auto b = static_cast<long long>(t(p, q));
      if (p > g - 2 || q > 3) {
        v.expect_zero(p, q, b);
        continue;
      }
      auto [dp, dq] = canonical_dual_cell(p, q, g);
      v.expect_equal(p, q, static_cast<long long>(t(dp, dq)), b);
    }
  v.settle();
  if (v.outcome != ok) throw std::logic_error("symmetry_verdict: witness list disagrees with the check");
  return v;
}

inline Verdict identity_verdict(const std::string& statement, const IdentityCheck& c, int p, std::string assumption) {
  Verdict v;
  v.statement = statement;
  v.assumptions = {std::move(assumption)};
  v.expect_value("lhs at p = " + std::to_string(p), c.rhs.get_str(), c.lhs.get_num().get_si(), c.ok);
  v.settle();
  return v;
}

template <Field F>
Verdict hilbert_verdict(const BettiTable& t, const GradedQuotient<F>& quot, int d_max) {
  auto h = hilbert_reconstruction_check(t, quot, d_max);
  Verdict v;
  v.statement = "hilbert";
  v.assumptions = {"window has a zero border"};
  for (const auto& pt : h.points)
    v.expect_value("dim R_" + std::to_string(pt.degree), pt.predicted.get_str(), static_cast<long long>(pt.actual),
                   pt.predicted == mpz_class(static_cast<unsigned long>(pt.actual)));
  v.settle();
  return v;
}

}  // namespace koszul
