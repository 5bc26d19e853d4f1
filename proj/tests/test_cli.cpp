#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "koszul/cli/app.hpp"

using namespace koszul;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "koszul_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Output after the invocation line.
std::string body(const std::string& out) { return out.substr(out.find('\n') + 1); }

class EnvPrime {
 public:
  explicit EnvPrime(const char* value) {
    if (const char* old = std::getenv("KOSZUL_DEFAULT_PRIME")) saved_ = old;
    ::setenv("KOSZUL_DEFAULT_PRIME", value, 1);
  }
  ~EnvPrime() {
    if (saved_) ::setenv("KOSZUL_DEFAULT_PRIME", saved_->c_str(), 1);
    else ::unsetenv("KOSZUL_DEFAULT_PRIME");
  }

 private:
  std::optional<std::string> saved_;
};

}  // namespace

TEST_CASE("documented examples", "[cli]") {
  auto v = run({"formula", "virtual-slope", "-s", "2", "-p", "0"});
  CHECK(v.code == 0);
  CHECK(body(v.out).rfind("7/1\n", 0) == 0);

  auto b = run({"betti", "corpus:genus4", "--seed", "42", "--pmax", "3", "--qmax", "3"});
  CHECK(b.code == 0);
  CHECK(body(b.out) ==
        "       0 1 2 3\n"
        "total: 1 2 1 0\n"
        "    0: 1 . . .\n"
        "    1: . 1 . .\n"
        "    2: . 1 . .\n"
        "    3: . . 1 .\n");

  CHECK(run({"check", "green", "corpus:genus5", "--cliff", "2"}).code == 0);
  CHECK(run({"check", "green", "corpus:genus4", "--cliff", "2"}).code == 1);
}

TEST_CASE("betti agrees with the library", "[cli]") {
  auto rec = canonical_genus5(PrimeField(), 7);
  auto t = betti_table(std::make_shared<const GradedQuotient<PrimeField>>(rec.ideal), 0, 4, 3);
  auto r = run({"betti", "corpus:genus5", "--seed", "7", "--json"});
  REQUIRE(r.code == 0);
  CHECK(BettiTable::from_json(json::parse(r.out)["table"]) == t);
}

TEST_CASE("invocation line reproduces the run", "[cli]") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"betti", "corpus:elliptic-quintic", "--seed", "5", "--threads", "3"},
           {"check", "euler", "corpus:twisted-cubic"},
           {"koszul", "corpus:rnc4", "--level", "2", "--degree", "1", "--rational"},
           {"formula", "thresholds", "-g", "2", "-d", "7"}}) {
    auto first = run(args);
    REQUIRE(first.code == 0);
    const std::string line = first.out.substr(0, first.out.find('\n'));
    REQUIRE(line.rfind("# koszul ", 0) == 0);
    CHECK(line.find("--threads") == std::string::npos);
    auto again = run(cli::detail::split_line(line.substr(9)));
    CHECK(again.out == first.out);
  }
}

TEST_CASE("KOSZUL_DEFAULT_PRIME", "[cli]") {
  {
    EnvPrime env("101");
    auto r = run({"betti", "corpus:twisted-cubic", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["curve"]["field"] == "101");
    CHECK(j["invocation"].get<std::string>().find("--prime 101") != std::string::npos);
    // an explicit prime wins
    CHECK(json::parse(run({"betti", "corpus:twisted-cubic", "--p", "7", "--json"}).out)["curve"]["field"] == "7");
  }
  {
    EnvPrime env("100");
    auto r = run({"betti", "corpus:twisted-cubic"});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("KOSZUL_DEFAULT_PRIME"));
  }
  CHECK(json::parse(run({"betti", "corpus:twisted-cubic", "--json"}).out)["curve"]["field"] == "32003");
}

TEST_CASE("threads never change output", "[cli][property]") {
  for (const char* in : {"corpus:genus5", "corpus:elliptic-quintic", "corpus:rnc5"}) {
    auto one = run({"betti", in, "--threads", "1", "--json"});
    auto many = run({"betti", in, "--threads", "4", "--json"});
    CHECK(one.out == many.out);
  }
}

TEST_CASE("JSON output is sorted and round-trips", "[cli]") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"check", "green", "corpus:genus4", "--json"},
           {"formula", "hurwitz", "-p", "3", "--json"},
           {"slope", "bn", "-g", "23", "-r", "1", "-d", "12", "--json"},
           {"check", "hilbert", "corpus:elliptic-quartic", "--json"}}) {
    auto r = run(args);
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.dump(2) + "\n" == r.out);
  }
  auto f = json::parse(run({"formula", "virtual-slope", "-s", "2", "-p", "1", "--json"}).out);
  CHECK(f["formula"] == "virtual-slope");
  CHECK(f["inputs"] == json{{"s", 2}, {"p", 1}});
  CHECK(f["value_num"] == "407");
  CHECK(f["value_den"] == "61");
  auto s = json::parse(run({"slope", "bn", "-g", "23", "-r", "1", "-d", "12", "--json"}).out);
  CHECK(s["value_num"] == "13");
  CHECK(s["value_den"] == "2");
  CHECK(s["partial"] == false);
}

TEST_CASE("moduli text output carries an exact decimal", "[cli]") {
  CHECK(body(run({"formula", "virtual-slope", "-s", "2", "-p", "1"}).out) == "407/61\ndecimal: 6.672131147540...\n");
  CHECK(body(run({"slope", "hurwitz", "-p", "2"}).out).rfind("15/2\ndecimal: 7.5\nwarning", 0) == 0);
  auto smrc = body(run({"formula", "smrc", "-g", "6", "-r", "4", "-d", "9", "-n", "2"}).out);
  CHECK(smrc == "expected dimension -2\nsurjective for every L in G^r_d(C)\n");
}

TEST_CASE("usage and input errors exit 2", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"betti", "corpus:genus4", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check", "green", "corpus:quintic"}).code == 2);
  CHECK(run({"check", "green", "corpus:elliptic-quintic"}).code == 2);  // not canonical
  CHECK(run({"betti", "corpus:genus4", "--p", "7", "--rational"}).code == 2);
  CHECK(run({"slope", "bn", "-g", "10", "-r", "1", "-d", "6"}).code == 2);
  CHECK(run({"formula", "virtual-slope", "-s", "0", "-p", "0"}).code == 2);
  CHECK(run({"betti", scratch("missing.txt").string()}).code == 2);

  auto bad = scratch("bad.txt");
  write(bad, "field 101\nvars x y\ngen x^2 + z\n");
  auto r = run({"betti", bad.string()});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("line 3, column 11"));

  auto help = run({"betti", "--help"});
  CHECK(help.code == 0);
  CHECK_THAT(help.out, Catch::Matchers::ContainsSubstring("--pmax"));
}

TEST_CASE("ideal files and corpus gen", "[cli]") {
  auto path = scratch("genus4.txt");
  auto g = run({"corpus", "gen", "genus4", "--seed", "9", "-o", path.string()});
  REQUIRE(g.code == 0);
  auto from_file = run({"betti", path.string(), "--json"});
  auto from_corpus = run({"betti", "corpus:genus4", "--seed", "9", "--json"});
  REQUIRE(from_file.code == 0);
  CHECK(json::parse(from_file.out)["table"] == json::parse(from_corpus.out)["table"]);

  // metadata comes from flags for files
  CHECK(run({"check", "green", path.string()}).code == 2);
  CHECK(run({"check", "green", path.string(), "--genus", "4", "--degree", "6", "--cliff", "1", "--tag", "canonical"})
            .code == 0);
  CHECK(run({"betti", path.string(), "--p", "101"}).code == 2);  // header says 32003

  auto q = run({"corpus", "gen", "corpus:rnc3", "--rational"});
  CHECK_THAT(q.out, Catch::Matchers::ContainsSubstring("field Q"));
}

TEST_CASE("check subcommands", "[cli]") {
  CHECK(run({"check", "np", "corpus:rnc4", "-k", "3"}).code == 0);
  CHECK(run({"check", "np", "corpus:genus4", "-k", "1"}).code == 1);
  CHECK(run({"check", "symmetry", "corpus:genus4"}).code == 0);
  CHECK(run({"check", "euler", "corpus:elliptic-quintic", "--level", "4"}).code == 0);
  CHECK(run({"check", "euler3", "corpus:elliptic-quartic"}).code == 0);
  CHECK(run({"check", "gonality", "corpus:elliptic-quintic"}).code == 0);
  CHECK(run({"check", "maxrank", "corpus:genus4"}).code == 0);
  CHECK(run({"check", "hilbert", "corpus:genus5", "--dmax", "6"}).code == 0);
  CHECK(run({"check", "prym-green", "corpus:genus4"}).code == 2);

  auto e = json::parse(run({"check", "euler", "corpus:elliptic-quintic", "--json"}).out);
  const auto& w = e["verdict"]["witnesses"];
  REQUIRE(w.size() == 4);
  CHECK(w[3]["computed"] == -1);
  CHECK(w[3]["expected"] == "-1");
}

TEST_CASE("batch", "[cli][batch]") {
  auto empty = scratch("empty.txt");
  write(empty, "");
  auto e = run({"batch", empty.string()});
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["lines"].empty());

  auto good = scratch("good.txt");
  write(good,
        "# acceptance-style lines\n"
        "formula virtual-slope -s 2 -p 0\n"
        "\n"
        "koszul check green corpus:genus5 --cliff 2\n"
        "betti \"corpus:twisted-cubic\" --pmax 3 --qmax 2\n");
  auto g = run({"batch", good.string()});
  CHECK(g.code == 0);
  auto gj = json::parse(g.out);
  REQUIRE(gj["lines"].size() == 3);
  CHECK(gj["lines"][0]["line"] == 2);
  CHECK(gj["lines"][1]["line"] == 4);
  CHECK(gj["summary"]["ok"] == 3);

  auto mixed = scratch("mixed.txt");
  write(mixed,
        "formula virtual-slope -s 2 -p 0\n"
        "betti corpus:genus4 --no-such-flag\n"
        "check green corpus:genus4 --cliff 2\n"
        "formula maxrank-slope -s 2\n");
  auto m = run({"batch", mixed.string()});
  CHECK(m.code == 2);
  auto mj = json::parse(m.out);
  REQUIRE(mj["lines"].size() == 4);
  CHECK(mj["lines"][1].contains("error"));
  CHECK(mj["lines"][1]["exit"] == 2);
  CHECK(mj["lines"][2]["exit"] == 1);
  CHECK(mj["lines"][3]["result"]["value_num"] == "7");

  auto falsy = scratch("false.txt");
  write(falsy, "check green corpus:genus4 --cliff 2\nformula rho -g 4 -r 1 -d 3\n");
  CHECK(run({"batch", falsy.string()}).code == 1);

  auto nested = scratch("nested.txt");
  write(nested, "batch " + good.string() + "\n");
  CHECK(run({"batch", nested.string()}).code == 2);

  auto strip = [](json j) {
    for (auto& l : j["lines"]) l.erase("elapsed_ms");
    return j;
  };
  CHECK(strip(json::parse(run({"batch", good.string(), "--threads", "4"}).out)) == strip(gj));
}

TEST_CASE("batch line splitting", "[cli]") {
  using cli::detail::split_line;
  CHECK(split_line("  a  b\tc ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_line("a \"b c\" d") == std::vector<std::string>{"a", "b c", "d"});
  CHECK(split_line("x\\ y") == std::vector<std::string>{"x y"});
  CHECK(split_line("\"\"") == std::vector<std::string>{""});
  CHECK_THROWS_AS(split_line("\"open"), cli::UsageError);
  CHECK(cli::detail::quote("a b") == "\"a b\"");
  CHECK(cli::detail::quote("plain") == "plain");
}
