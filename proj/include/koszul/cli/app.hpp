#pragma once

// Command-line front end. Every subcommand produces a Result holding a JSON
// body, a text rendering and an exit code; run() prints one of the two after
// an invocation line that reproduces the run.
//
//   koszul betti corpus:genus4 --seed 42 --pmax 3 --qmax 3
//   koszul check green corpus:genus5 --cliff 2
//   koszul formula virtual-slope -s 2 -p 0
//   koszul batch commands.txt --threads 4

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "koszul/complex/checks.hpp"
#include "koszul/conjectures/checks.hpp"
#include "koszul/corpus/generators.hpp"
#include "koszul/moduli/formulas.hpp"
#include "koszul/polyring/ideal_io.hpp"
#include "koszul/util/parallel.hpp"

namespace koszul::cli {

using nlohmann::json;

/// Exit codes: verdict true or plain success, verdict false, usage or input error.
enum Exit : int { ok = 0, verdict_false = 1, error = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Result {
  json body = json::object();
  std::string text;
  int code = Exit::ok;
};

/// A parsed invocation. `tokens` is the canonical argument list (without
/// --threads, which never affects output) and reproduces the run.
struct Command {
  std::vector<std::string> path;
  std::vector<std::string> tokens;
  bool json_output = false;
  unsigned threads = 1;
  std::function<Result(const Command&)> action;

  std::string invocation() const;
};

/// 32003 unless KOSZUL_DEFAULT_PRIME names another prime below 2^31.
inline std::uint32_t default_prime() {
  const char* env = std::getenv("KOSZUL_DEFAULT_PRIME");
  if (!env || !*env) return PrimeField::default_modulus;
  const std::string s(env);
  if (s.size() > 10 || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("KOSZUL_DEFAULT_PRIME='" + s + "' is not a number");
  const auto p = std::stoull(s);
  if (p >= (1ull << 31) || !PrimeField::is_prime(p))
    throw UsageError("KOSZUL_DEFAULT_PRIME=" + s + " is not a prime below 2^31");
  return static_cast<std::uint32_t>(p);
}

namespace detail {

inline std::string quote(const std::string& t) {
  if (!t.empty() && t.find_first_of(" \t\"'\\#") == std::string::npos) return t;
  std::string out = "\"";
  for (char c : t) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Splits a batch line on whitespace; double quotes group, backslash escapes.
inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false, quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '\\' && i + 1 < line.size()) cur += line[++i];
      else if (c == '"') quoted = false;
      else cur += c;
    } else if (c == '"') {
      quoted = in_token = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) out.push_back(cur);
      cur.clear();
      in_token = false;
    } else {
      if (c == '\\' && i + 1 < line.size()) cur += line[++i];
      else cur += c;
      in_token = true;
    }
  }
  if (quoted) throw UsageError("unterminated quote");
  if (in_token) out.push_back(cur);
  return out;
}

inline std::vector<std::string> strip_threads(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].rfind("--threads=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

inline std::string frac(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

inline json rational_json(const mpq_class& q) {
  return {{"value_num", q.get_num().get_str()}, {"value_den", q.get_den().get_str()},
          {"decimal", moduli::to_decimal(q)}};
}

inline std::string rational_text(const mpq_class& q) { return frac(q) + "\ndecimal: " + moduli::to_decimal(q) + "\n"; }

// ---------------------------------------------------------------- inputs

struct InputOpts {
  std::string input;
  std::optional<std::uint32_t> prime;
  bool rational = false;
  std::uint64_t seed = 0;
  std::optional<int> genus, degree, cliff, gonality;
  std::optional<std::string> tag;
};

/// Curve record for `corpus:<name>` or an ideal file, with metadata overrides.
inline AnyCurveRecord load_record(const InputOpts& o) {
  if (o.prime && o.rational) throw UsageError("--prime and --rational are exclusive");
  AnyCurveRecord rec = [&]() -> AnyCurveRecord {
    const std::string scheme = "corpus:";
    if (o.input.rfind(scheme, 0) == 0) {
      const std::string name = o.input.substr(scheme.size());
      CorpusSpec spec;
      spec.seed = o.seed;
      if (name == "twisted-cubic") {
        spec.family = "rnc";
        spec.parameter = 3;
      } else if (name.size() > 3 && name.rfind("rnc", 0) == 0 &&
                 name.find_first_not_of("0123456789", 3) == std::string::npos && name.size() <= 6) {
        spec.family = "rnc";
        spec.parameter = std::stoi(name.substr(3));
      } else if (name != "rnc" && std::find(corpus_families().begin(), corpus_families().end(), name) !=
                                      corpus_families().end()) {
        spec.family = name;
      } else {
        throw UsageError("unknown corpus input '" + o.input +
                         "' (rnc<d>, twisted-cubic, elliptic-quartic, elliptic-quintic, genus4, genus5)");
      }
      if (!o.rational) spec.prime = o.prime.value_or(default_prime());
      return generate(spec);
    }
    std::ifstream in(o.input);
    if (!in) throw UsageError("cannot open '" + o.input + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    AnyIdeal ideal = [&] {
      try {
        return parse_ideal(buf.str());
      } catch (const ParseError& e) {
        throw UsageError(o.input + ": " + e.what());
      }
    }();
    return std::visit(
        [&](auto& I) -> AnyCurveRecord {
          using F = std::decay_t<decltype(I.field())>;
          if constexpr (std::is_same_v<F, PrimeField>) {
            if (o.rational || (o.prime && *o.prime != I.field().modulus()))
              throw UsageError("field flag disagrees with the header of '" + o.input + "'");
          } else if (o.prime) {
            throw UsageError("field flag disagrees with the header of '" + o.input + "'");
          }
          const int r = static_cast<int>(I.num_vars()) - 1;
          return CurveRecord<F>{std::move(I), 0, 0, r, std::nullopt, std::nullopt, ""};
        },
        ideal);
  }();
  std::visit(
      [&](auto& r) {
        if (o.genus) r.genus = *o.genus;
        if (o.degree) r.degree = *o.degree;
        if (o.cliff) r.clifford = *o.cliff;
        if (o.gonality) r.gonality = *o.gonality;
        if (o.tag) r.tag = *o.tag;
        r.validate();
      },
      rec);
  return rec;
}

template <class T>
void optional_option(CLI::App* app, const std::string& name, std::optional<T>& dst, const std::string& help) {
  app->add_option_function<T>(name, [&dst](const T& v) { dst = v; }, help);
}

inline void add_input(CLI::App* app, InputOpts& o, bool metadata = true) {
  app->add_option("input", o.input, "ideal file or corpus:<name>")->required();
  optional_option(app, "--p,--prime", o.prime, "prime field F_p for corpus inputs");
  app->add_flag("--rational", o.rational, "work over Q");
  app->add_option("--seed", o.seed, "corpus seed");
  if (!metadata) return;
  optional_option(app, "--genus", o.genus, "curve genus");
  optional_option(app, "--degree", o.degree, "degree of the embedding line bundle");
  optional_option(app, "--cliff", o.cliff, "Clifford index");
  optional_option(app, "--gonality", o.gonality, "gonality");
  optional_option(app, "--tag", o.tag, "record tag (canonical, prym-canonical, ...)");
}

template <Field F>
json record_json(const CurveRecord<F>& r, const InputOpts& o) {
  json j{{"input", o.input},   {"field", r.ideal.field().name()}, {"genus", r.genus},
         {"degree", r.degree}, {"ambient", r.ambient},            {"tag", r.tag}};
  j["clifford"] = r.clifford ? json(*r.clifford) : json(nullptr);
  j["gonality"] = r.gonality ? json(*r.gonality) : json(nullptr);
  return j;
}

template <Field F>
std::shared_ptr<const GradedQuotient<F>> quotient_of(const CurveRecord<F>& r) {
  return std::make_shared<const GradedQuotient<F>>(r.ideal);
}

inline std::string verdict_text(const Verdict& v) {
  std::string out = v.statement + ": " + (v.outcome ? "true" : "false") + "\n";
  for (const auto& w : v.witnesses)
    out += std::string("  ") + (w.satisfied ? "ok " : "!! ") + w.quantity + " = " + std::to_string(w.computed) +
           " (expected " + w.expected + ")\n";
  for (const auto& a : v.assumptions) out += "assumption: " + a + "\n";
  for (const auto& n : v.notes) out += "note: " + n + "\n";
  return out;
}

template <Field F>
Result verdict_result(const Verdict& v, const CurveRecord<F>& rec, const InputOpts& o) {
  Result res;
  res.body = {{"command", "check"}, {"curve", record_json(rec, o)}, {"verdict", v.to_json()}};
  res.text = verdict_text(v);
  res.code = v.outcome ? Exit::ok : Exit::verdict_false;
  return res;
}

// ---------------------------------------------------------------- builders

struct Window {
  std::optional<int> pmax, qmax;
  int twist = 0;
};

inline void add_window(CLI::App* app, Window& w, bool twist = true) {
  optional_option(app, "--pmax", w.pmax, "largest syzygy index p");
  optional_option(app, "--qmax", w.qmax, "largest row q");
  if (twist) app->add_option("--twist", w.twist, "compute the table of R(a)");
}

template <Field F>
BettiTable table_for(const CurveRecord<F>& rec, const Window& w, int pmax, int qmax, unsigned threads) {
  return betti_table(quotient_of(rec), w.twist, w.pmax.value_or(pmax), w.qmax.value_or(qmax), threads);
}

inline void require_meta(bool present, const std::string& what) {
  if (!present) throw MetadataError(what);
}

struct Builder {
  Command& cmd;
  InputOpts in;
  Window win;
  int level = 0, kdeg = 0, np_index = 0, maxrank_n = 2, dmax = 6;
  std::optional<int> euler_p;
  long s = 0, p = 0, g = 0, r = 0, d = 0, n = 0, deg = 0, h0 = 0;
  std::string slope_a, slope_b, out_path, batch_path;

  explicit Builder(Command& c) : cmd(c) {}

  void common(CLI::App* app) {
    app->add_flag("--json", cmd.json_output, "JSON output (keys sorted)");
    app->add_option("--threads", cmd.threads, "worker threads; never changes output")->check(CLI::Range(1u, 1024u));
  }

  template <class Body>
  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, Body body) {
    auto* app = parent->add_subcommand(name, help);
    common(app);
    app->callback([this, body] { cmd.action = body; });
    return app;
  }

  template <class Fn>
  static Result on_record(const InputOpts& o, Fn&& fn) {
    auto rec = load_record(o);
    return std::visit([&](auto& r) { return fn(r); }, rec);
  }

  void build(CLI::App& app);
  void build_check(CLI::App* check);
  void build_formula(CLI::App* formula);
  void build_slope(CLI::App* slope);
};

inline void Builder::build(CLI::App& app) {
  app.require_subcommand(1);

  auto* betti = leaf(&app, "betti", "Betti table of R = S/I", [this](const Command& c) {
    return on_record(in, [&](const auto& rec) {
      auto t = table_for(rec, win, rec.ambient, 3, c.threads);
      Result res;
      res.body = {{"command", "betti"}, {"curve", record_json(rec, in)}, {"table", t.to_json()}};
      res.text = t.to_text();
      return res;
    });
  });
  add_input(betti, in);
  add_window(betti, win);

  auto* kos = leaf(&app, "koszul", "one Koszul cohomology group K_{p,q}", [this](const Command&) {
    return on_record(in, [&](const auto& rec) {
      using F = std::decay_t<decltype(rec.ideal.field())>;
      KoszulComplex<F> cx(quotient_of(rec), win.twist);
      const auto cell = cx.cell(level, kdeg);
      Result res;
      res.body = {{"command", "koszul"}, {"curve", record_json(rec, in)},
                  {"p", level},          {"q", kdeg},
                  {"twist", win.twist},  {"chain_dim", level < 0 ? 0 : cx.chain_dim(level, kdeg)},
                  {"kernel_dim", cell.kernel_dim}, {"incoming_rank", cell.incoming_rank},
                  {"dim", cell.dim}};
      res.text = "K_{" + std::to_string(level) + "," + std::to_string(kdeg) + "} = " + std::to_string(cell.dim) +
                 "\n  kernel " + std::to_string(cell.kernel_dim) + ", image of delta_{" + std::to_string(level + 1) +
                 "," + std::to_string(kdeg - 1) + "} " + std::to_string(cell.incoming_rank) + "\n";
      return res;
    });
  });
  // --degree is the row q here, so the curve metadata flags are not offered.
  add_input(kos, in, false);
  kos->add_option("--level", level, "syzygy index p")->required();
  kos->add_option("--degree", kdeg, "row q")->required();
  kos->add_option("--twist", win.twist, "compute K_{p,q} of R(a)");

  build_check(app.add_subcommand("check", "verify a statement on one curve")->require_subcommand(1));
  build_slope(app.add_subcommand("slope", "slope a / min b_i of a divisor class")->require_subcommand(1));
  build_formula(app.add_subcommand("formula", "evaluate a closed-form formula")->require_subcommand(1));

  auto* corpus = app.add_subcommand("corpus", "built-in curve families")->require_subcommand(1);
  auto* gen = leaf(corpus, "gen", "write a corpus ideal in the file format", [this](const Command& c) {
    if (in.input.rfind("corpus:", 0) != 0) in.input = "corpus:" + in.input;
    return on_record(in, [&](const auto& rec) {
      std::string text = "# " + c.invocation() + "\n# genus " + std::to_string(rec.genus) + ", degree " +
                         std::to_string(rec.degree) + ", P^" + std::to_string(rec.ambient) +
                         (rec.tag.empty() ? "" : ", " + rec.tag) + "\n" + format_ideal(rec.ideal);
      Result res;
      res.body = {{"command", "corpus gen"}, {"curve", record_json(rec, in)}};
      if (out_path.empty()) {
        res.body["ideal"] = format_ideal(rec.ideal);
        res.text = text;
      } else {
        std::ofstream f(out_path);
        if (!(f << text)) throw UsageError("cannot write '" + out_path + "'");
        res.body["written"] = out_path;
        res.text = "wrote " + out_path + "\n";
      }
      return res;
    });
  });
  add_input(gen, in, false);
  gen->add_option("-o,--output", out_path, "output file (default: stdout)");

  leaf(corpus, "list", "list corpus inputs", [](const Command&) {
    Result res;
    json names = json::array({"rnc<d>", "twisted-cubic"});
    for (const auto& f : corpus_families())
      if (f != "rnc") names.push_back(f);
    res.body = {{"command", "corpus list"}, {"inputs", names}};
    for (const auto& nm : names) res.text += "corpus:" + nm.get<std::string>() + "\n";
    return res;
  });
}

inline void Builder::build_check(CLI::App* check) {
  auto table_check = [this, check](const std::string& name, const std::string& help, auto verdict_of) {
    auto* app = leaf(check, name, help, [this, verdict_of](const Command& c) {
      return on_record(in, [&](const auto& rec) {
        auto t = table_for(rec, win, rec.ambient, 3, c.threads);
        return verdict_result(verdict_of(rec, t), rec, in);
      });
    });
    add_input(app, in);
    add_window(app, win, false);
    return app;
  };

  table_check("green", "Green's conjecture on a canonical curve",
              [](const auto& rec, const BettiTable& t) { return check_green(rec, t); });
  table_check("gonality", "gonality conjecture for a non-special embedding",
              [](const auto& rec, const BettiTable& t) { return check_gonality_conjecture(rec, t); });
  table_check("prym-green", "Prym-Green vanishing for a Prym-canonical curve",
              [](const auto& rec, const BettiTable& t) { return check_prym_green(rec, t); });
  table_check("symmetry", "b_{p,q} = b_{g-2-p,3-q} on a canonical curve", [](const auto& rec, const BettiTable& t) {
    require_meta(rec.genus >= 2, "check symmetry: requires genus >= 2 (--genus)");
    return symmetry_verdict(t, rec.genus);
  });
  auto* np = table_check("np", "property (N_p)", [this](const auto&, const BettiTable& t) {
    return np_verdict(t, np_index);
  });
  np->add_option("-k,--index", np_index, "p in (N_p)")->required()->check(CLI::NonNegativeNumber);

  auto* mr = leaf(check, "maxrank", "maximal rank of Sym^n H0(L) -> H0(L^n)", [this](const Command&) {
    return on_record(in, [&](const auto& rec) {
      auto quot = quotient_of(rec);
      return verdict_result(check_max_rank(rec, *quot, maxrank_n), rec, in);
    });
  });
  add_input(mr, in);
  mr->add_option("-n", maxrank_n, "degree n >= 2");

  auto* hil = leaf(check, "hilbert", "Hilbert function from the Betti table", [this](const Command& c) {
    return on_record(in, [&](const auto& rec) {
      auto t = table_for(rec, win, rec.ambient + 1, 4, c.threads);
      auto quot = quotient_of(rec);
      return verdict_result(hilbert_verdict(t, *quot, dmax), rec, in);
    });
  });
  add_input(hil, in);
  add_window(hil, win);
  hil->add_option("--dmax", dmax, "largest degree compared")->check(CLI::NonNegativeNumber);

  auto identity = [this, check](const std::string& name, const std::string& help, bool three_term) {
    auto* app = leaf(check, name, help, [this, name, three_term](const Command&) {
      return on_record(in, [&](const auto& rec) {
        using F = std::decay_t<decltype(rec.ideal.field())>;
        KoszulComplex<F> cx(quotient_of(rec));
        const int g = rec.genus, dd = rec.degree, rr = rec.ambient;
        require_meta(dd > 0, "check " + name + ": requires the embedding degree (--degree)");
        int lo = 1, hi = three_term ? rr : dd - g;
        if (euler_p) lo = hi = *euler_p;
        if (lo > hi) throw MetadataError("check " + name + ": no valid p");
        Verdict v;
        v.statement = name;
        if (three_term) {
          require_meta(2 * dd > 2 * g - 2, "check euler3: requires L^2 non-special (2d > 2g - 2)");
          v.assumptions = {"L^2 non-special (2d > 2g - 2)", "h0(L) = r + 1 = " + std::to_string(rr + 1)};
        } else {
          v.assumptions = {"L non-special, d = " + std::to_string(dd) + " > g = " + std::to_string(g)};
        }
        for (int pp = lo; pp <= hi; ++pp) {
          const auto c = three_term ? euler_identity3_check(cx, g, dd, rr, pp) : euler_identity_check(cx, g, dd, pp);
          const std::string lhs = three_term ? "K_{p,1} - K_{p-1,2} + K_{p-2,3}" : "K_{p,1} - K_{p-1,2}";
          v.expect_value(lhs + " at p = " + std::to_string(pp), c.rhs.get_str(), c.lhs.get_num().get_si(), c.ok);
        }
        v.settle();
        return verdict_result(v, rec, in);
      });
    });
    add_input(app, in);
    optional_option(app, "--level", euler_p, "check a single p (default: every valid p)");
  };
  identity("euler", "dim K_{p,1} - dim K_{p-1,2} against its closed form", false);
  identity("euler3", "three-term alternating sum against its closed form", true);
}

inline void Builder::build_formula(CLI::App* formula) {
  // Every formula reports {formula, inputs, value_num, value_den} plus any
  // structured parts; integers have value_den = 1.
  auto emit = [](const std::string& name, json inputs, const mpq_class& value, json extra = json::object(),
                 std::string text = {}) {
    Result res;
    res.body = {{"command", "formula"}, {"formula", name}, {"inputs", std::move(inputs)}};
    res.body.update(rational_json(value));
    res.body.update(extra);
    res.text = text.empty() ? rational_text(value) : text;
    return res;
  };
  auto need = [](CLI::App* app, const std::string& flag, long& dst, const std::string& help) {
    app->add_option(flag, dst, help)->required();
  };

  auto* rho = leaf(formula, "rho", "Brill-Noether number g - (r+1)(g-d+r)", [this, emit](const Command&) {
    return emit("rho", {{"g", g}, {"r", r}, {"d", d}}, mpq_class(static_cast<long>(moduli::brill_noether_number(g, r, d))));
  });
  need(rho, "-g", g, "genus");
  need(rho, "-r", r, "dimension r");
  need(rho, "-d", d, "degree");

  auto* cliff = leaf(formula, "cliff", "Clifford index deg - 2 h0 + 2", [this, emit](const Command&) {
    return emit("cliff", {{"deg", deg}, {"h0", h0}}, mpq_class(static_cast<long>(moduli::clifford_index_bundle(deg, h0))));
  });
  need(cliff, "--deg", deg, "degree");
  need(cliff, "--h0", h0, "h0(L)");

  auto poly = [&](const std::string& name, mpz_class (*fn)(long, long)) {
    auto* app = leaf(formula, name, name + "(s,p)", [this, emit, name, fn](const Command&) {
      return emit(name, {{"s", s}, {"p", p}}, mpq_class(fn(s, p)));
    });
    need(app, "-s", s, "s >= 1");
    need(app, "-p", p, "p >= 0");
  };
  poly("f", &moduli::f_poly);
  poly("h", &moduli::h_poly);

  auto* vs = leaf(formula, "virtual-slope", "6 f / ((p+2) s h)", [this, emit](const Command&) {
    return emit("virtual-slope", {{"s", s}, {"p", p}}, moduli::virtual_slope(s, p),
                {{"genus", moduli::virtual_genus(s, p)}});
  });
  need(vs, "-s", s, "s >= 1");
  need(vs, "-p", p, "p >= 0");

  auto* hur = leaf(formula, "hurwitz", "class of the Hurwitz divisor, g = 2p + 3", [this, emit](const Command&) {
    const auto h = moduli::hurwitz_class(p);
    const auto sl = h.lambda / h.delta0;
    json cls{{"lambda", frac(h.lambda)}, {"delta0", frac(h.delta0)}, {"delta1", frac(h.delta1)}};
    std::string text = frac(h.lambda) + " lambda - " + frac(h.delta0) + " delta_0 - " + frac(h.delta1) +
                       " delta_1\nslope: " + rational_text(sl);
    return emit("hurwitz", {{"p", p}}, sl, {{"class", cls}, {"genus", 2 * p + 3}}, text);
  });
  need(hur, "-p", p, "p >= 0");

  auto* mrs = leaf(formula, "maxrank-slope", "slope of the maximal-rank divisor", [this, emit](const Command&) {
    return emit("maxrank-slope", {{"s", s}}, moduli::maximal_rank_slope(s));
  });
  need(mrs, "-s", s, "s >= 1");

  auto* ab = leaf(formula, "ab-ranks", "ranks of the bundles A and B", [this, emit](const Command&) {
    const auto a = moduli::ab_ranks(g, r, d, p);
    json extra{{"rank_a", a.rank_a.get_str()}, {"rank_b", a.rank_b.get_str()}, {"equal", a.equal}};
    std::string text = "rank A = " + a.rank_a.get_str() + "\nrank B = " + a.rank_b.get_str() + "\n" +
                       (a.equal ? "equal" : "not equal") + "\n";
    return emit("ab-ranks", {{"g", g}, {"r", r}, {"d", d}, {"p", p}}, mpq_class(a.rank_a - a.rank_b), extra, text);
  });
  need(ab, "-g", g, "genus");
  need(ab, "-r", r, "dimension r");
  need(ab, "-d", d, "degree");
  need(ab, "-p", p, "syzygy index");

  auto* smrc = leaf(formula, "smrc", "strong maximal rank expected dimension", [this, emit](const Command&) {
    const auto e = moduli::smrc_expected_dim(g, r, d, n);
    const auto verdict = moduli::smrc_prediction(g, r, d, n);
    return emit("smrc", {{"g", g}, {"r", r}, {"d", d}, {"n", n}}, mpq_class(static_cast<long>(e)), {{"prediction", verdict}},
                "expected dimension " + std::to_string(e) + "\n" + verdict + "\n");
  });
  need(smrc, "-g", g, "genus");
  need(smrc, "-r", r, "dimension r");
  need(smrc, "-d", d, "degree");
  need(smrc, "-n", n, "degree n");

  auto* msc = leaf(formula, "msc-range", "predicted vanishing range of K_{p,2}", [this](const Command&) {
    const auto range = moduli::minimal_syzygy_range(r, s);
    Result res;
    res.body = {{"command", "formula"}, {"formula", "msc-range"}, {"inputs", {{"r", r}, {"s", s}}}};
    res.body["range"] = range ? json::array({range->first, range->second}) : json(nullptr);
    res.text = range ? "[" + std::to_string(range->first) + ", " + std::to_string(range->second) + "]\n" : "empty\n";
    return res;
  });
  need(msc, "-r", r, "dimension r");
  need(msc, "-s", s, "s >= 1");

  auto* thr = leaf(formula, "thresholds", "nonvanishing thresholds for a non-special L", [this, emit](const Command&) {
    const auto t = moduli::nonvan_thresholds(g, d);
    json extra;
    extra["k_p1_max"] = t.k_p1_max ? json(*t.k_p1_max) : json(nullptr);
    extra["k_p21_range"] = t.k_p21_range ? json::array({t.k_p21_range->first, t.k_p21_range->second}) : json(nullptr);
    std::string text = "threshold (d+1-g)(d-g)/d = " + rational_text(t.threshold);
    text += "K_{p,1} != 0 for 0 <= p <= " + (t.k_p1_max ? std::to_string(*t.k_p1_max) : std::string("(none)")) + "\n";
    text += "K_{p-1,2} != 0 for p in " +
            (t.k_p21_range ? "[" + std::to_string(t.k_p21_range->first) + ", " +
                                 std::to_string(t.k_p21_range->second) + "]"
                           : std::string("(empty)")) +
            "\n";
    return emit("thresholds", {{"g", g}, {"d", d}}, t.threshold, extra, text);
  });
  need(thr, "-g", g, "genus");
  need(thr, "-d", d, "degree");

  auto* kn = leaf(formula, "kernel-numerics", "rank, degree, -chi of wedge^{p+1} M_L (x) K (x) L",
                  [this](const Command&) {
                    const auto k = moduli::kernel_bundle_numerics(g, d, r, p);
                    Result res;
                    res.body = {{"command", "formula"},
                                {"formula", "kernel-numerics"},
                                {"inputs", {{"g", g}, {"d", d}, {"r", r}, {"p", p}}},
                                {"rank", k.rank.get_str()},
                                {"degree", k.degree.get_str()},
                                {"minus_chi", k.minus_chi.get_str()}};
                    res.text = "rank " + k.rank.get_str() + "\ndegree " + k.degree.get_str() + "\n-chi " +
                               k.minus_chi.get_str() + "\n";
                    return res;
                  });
  need(kn, "-g", g, "genus");
  need(kn, "-d", d, "degree");
  need(kn, "-r", r, "dimension r");
  need(kn, "-p", p, "syzygy index");
}

inline mpq_class parse_rational(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789/-+") != std::string::npos)
    throw UsageError("bad rational '" + s + "'");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw UsageError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw UsageError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline void Builder::build_slope(CLI::App* slope_cmd) {
  auto emit = [](const std::string& source, const moduli::DivisorClass& D) {
    const auto sl = moduli::slope(D);
    json b = json::array();
    for (const auto& x : D.b()) b.push_back(x ? json(frac(*x)) : json(nullptr));
    Result res;
    res.body = {{"command", "slope"},
                {"source", source},
                {"class", {{"genus", D.genus()}, {"a", frac(D.a())}, {"b", b}}},
                {"partial", sl.partial}};
    res.body.update(rational_json(sl.value));
    res.text = rational_text(sl.value);
    if (sl.partial) res.text += "warning: some b_i are unknown; slope taken over the known ones\n";
    return res;
  };

  auto* bn = leaf(slope_cmd, "bn", "Brill-Noether divisor (rho = -1)", [this, emit](const Command&) {
    return emit("bn", moduli::bn_divisor_class(static_cast<int>(g), static_cast<int>(r), static_cast<int>(d)));
  });
  bn->add_option("-g", g, "genus")->required();
  bn->add_option("-r", r, "dimension r")->required();
  bn->add_option("-d", d, "degree")->required();

  auto* vd = leaf(slope_cmd, "virtual", "virtual divisor Z_{g,p}", [this, emit](const Command&) {
    return emit("virtual", moduli::virtual_divisor_class(s, p));
  });
  vd->add_option("-s", s, "s >= 1")->required();
  vd->add_option("-p", p, "p >= 0")->required();

  auto* hz = leaf(slope_cmd, "hurwitz", "Hurwitz divisor, g = 2p + 3", [this, emit](const Command&) {
    return emit("hurwitz", moduli::hurwitz_divisor_class(p));
  });
  hz->add_option("-p", p, "p >= 0")->required();

  auto* cls = leaf(slope_cmd, "class", "explicit class a lambda - sum b_i delta_i", [this, emit](const Command&) {
    std::vector<std::optional<mpq_class>> b;
    std::stringstream ss(slope_b);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "-") b.emplace_back();
      else b.emplace_back(parse_rational(item));
    }
    return emit("class", moduli::DivisorClass(static_cast<int>(g), parse_rational(slope_a), std::move(b)));
  });
  cls->add_option("-g", g, "genus")->required();
  cls->add_option("--a", slope_a, "coefficient of lambda")->required();
  cls->add_option("--b", slope_b, "b_0,...,b_[g/2]; '-' marks an unknown coefficient")->required();
}

}  // namespace detail

inline std::string invocation_line(const std::vector<std::string>& tokens) {
  std::string out = "koszul";
  for (const auto& t : tokens) out += " " + detail::quote(t);
  return out;
}

inline std::string Command::invocation() const { return invocation_line(tokens); }

/// Parses an argument list (without the program name). Help requests and
/// usage errors surface as CLI::Error.
inline std::unique_ptr<Command> parse_command(const std::vector<std::string>& args,
                                              std::shared_ptr<detail::Builder>& keep, std::string& help) {
  auto cmd = std::make_unique<Command>();
  keep = std::make_shared<detail::Builder>(*cmd);
  CLI::App app("Koszul cohomology, Betti tables and moduli slopes, in exact arithmetic", "koszul");
  keep->build(app);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (true) {
      auto subs = target->get_subcommands();
      if (subs.empty()) break;
      target = subs.front();
    }
    help = target->help();
    return nullptr;
  }
  cmd->tokens = detail::strip_threads(args);
  // Corpus inputs without a field flag pick up the default prime; record it.
  const auto& in = keep->in;
  if (in.input.size() && !in.rational && !in.prime &&
      (in.input.rfind("corpus:", 0) == 0 || (args.size() > 1 && args[0] == "corpus"))) {
    cmd->tokens.push_back("--prime");
    cmd->tokens.push_back(std::to_string(default_prime()));
  }
  return cmd;
}

/// One batch line: its JSON report entry and exit code.
inline std::pair<json, int> run_batch_line(std::size_t number, const std::vector<std::string>& args,
                                           unsigned threads) {
  json entry{{"line", number}};
  const auto start = std::chrono::steady_clock::now();
  int code = Exit::error;
  try {
    std::shared_ptr<detail::Builder> keep;
    std::string help;
    auto cmd = parse_command(args, keep, help);
    if (!cmd) throw UsageError("help is not available in batch mode");
    if (!cmd->tokens.empty() && cmd->tokens[0] == "batch") throw UsageError("batch files cannot nest");
    cmd->threads = std::max(cmd->threads, threads);
    entry["invocation"] = cmd->invocation();
    auto res = cmd->action(*cmd);
    entry["result"] = std::move(res.body);
    code = res.code;
  } catch (const CLI::ParseError& e) {
    entry["error"] = e.what();
  } catch (const std::exception& e) {
    entry["error"] = e.what();
  }
  if (!entry.contains("invocation")) entry["invocation"] = invocation_line(args);
  entry["exit"] = code;
  entry["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {entry, code};
}

/// Runs newline-delimited invocations. Blank lines and '#' comments are
/// skipped; a leading "koszul" token is ignored so invocation lines paste back.
/// Lines run in parallel when threads > 1; the report keeps file order.
inline std::pair<json, int> run_batch(const std::string& text, unsigned threads) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::vector<json> entries;
  {
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      if (raw.back() == '\r') raw.pop_back();
      try {
        auto args = detail::split_line(raw);
        if (!args.empty() && args[0] == "koszul") args.erase(args.begin());
        lines.emplace_back(n, std::move(args));
      } catch (const std::exception& e) {
        lines.emplace_back(n, std::vector<std::string>{});
        entries.resize(lines.size());
        entries.back() = json{{"line", n}, {"invocation", raw}, {"error", e.what()}, {"exit", int(Exit::error)},
                              {"elapsed_ms", 0.0}};
      }
    }
  }
  entries.resize(lines.size());
  std::vector<int> codes(lines.size(), Exit::error);
  parallel_for(lines.size(), threads, [&](std::size_t i) {
    if (!entries[i].is_null()) return;  // tokenizer already failed
    auto [entry, code] = run_batch_line(lines[i].first, lines[i].second, 1);
    entries[i] = std::move(entry);
    codes[i] = code;
  });
  int overall = Exit::ok;
  std::size_t n_true = 0, n_false = 0, n_err = 0;
  for (const auto& c : codes) {
    if (c == Exit::ok) ++n_true;
    else if (c == Exit::verdict_false) ++n_false;
    else ++n_err;
  }
  if (n_err) overall = Exit::error;
  else if (n_false) overall = Exit::verdict_false;
  json report{{"lines", entries},
              {"summary", {{"total", lines.size()}, {"ok", n_true}, {"false", n_false}, {"errors", n_err}}},
              {"exit", overall}};
  return {report, overall};
}

/// Entry point shared by the tool, the tests and the acceptance suite.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (!args.empty() && args[0] == "batch") {
      CLI::App app("run newline-delimited invocations", "koszul batch");
      std::string path;
      unsigned threads = 1;
      bool json_flag = false;
      app.add_option("file", path, "command file")->required();
      app.add_option("--threads", threads, "run lines in parallel")->check(CLI::Range(1u, 1024u));
      app.add_flag("--json", json_flag, "accepted for symmetry; the report is always JSON");
      std::vector<std::string> rest(args.begin() + 1, args.end());
      std::vector<std::string> rev(rest.rbegin(), rest.rend());
      try {
        app.parse(rev);
      } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Exit::ok;
      }
      std::ifstream f(path);
      if (!f) throw UsageError("cannot open '" + path + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      auto [report, code] = run_batch(buf.str(), threads);
      report["invocation"] = invocation_line(detail::strip_threads(args));
      out << report.dump(2) << "\n";
      return code;
    }
    if (args.empty()) {
      std::shared_ptr<detail::Builder> keep;
      std::string help;
      parse_command({"--help"}, keep, help);
      err << help;
      return Exit::error;
    }
    std::shared_ptr<detail::Builder> keep;
    std::string help;
    auto cmd = parse_command(args, keep, help);
    if (!cmd) {
      out << help;
      return Exit::ok;
    }
    auto res = cmd->action(*cmd);
    if (cmd->json_output) {
      res.body["invocation"] = cmd->invocation();
      out << res.body.dump(2) << "\n";
    } else {
      out << "# " << cmd->invocation() << "\n" << res.text;
    }
    return res.code;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Exit::error;
  }
}

}  // namespace koszul::cli
