#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace koszul {

struct Witness {
  std::string quantity;                    // "b_{1,2}", "dim I_2", ...
  std::optional<std::pair<int, int>> cell; // set when the quantity is a Betti number
  std::string expected;                    // "0", ">= 1", or an exact value
  long long computed = 0;
  bool satisfied = false;

  nlohmann::json to_json() const {
    nlohmann::json j{{"quantity", quantity}, {"expected", expected}, {"computed", computed}, {"satisfied", satisfied}};
    if (cell) {
      j["p"] = cell->first;
      j["q"] = cell->second;
    }
    return j;
  }
};

inline std::string betti_name(int p, int q) { return "b_{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

struct Verdict {
  std::string statement;
  bool outcome = false;
  std::vector<Witness> witnesses;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;

  void expect_zero(int p, int q, long long value) { add_cell(p, q, "0", value, value == 0); }
  void expect_nonzero(int p, int q, long long value) { add_cell(p, q, ">= 1", value, value >= 1); }
  void expect_equal(int p, int q, long long expected, long long value) {
    add_cell(p, q, std::to_string(expected), value, value == expected);
  }
  void expect_value(std::string quantity, std::string expected, long long value, bool ok) {
    witnesses.push_back({std::move(quantity), std::nullopt, std::move(expected), value, ok});
  }

  /// Outcome is the conjunction of every witness; an empty list is false.
  void settle() {
    outcome = !witnesses.empty();
    for (const auto& w : witnesses) outcome = outcome && w.satisfied;
  }

  nlohmann::json to_json() const {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : witnesses) w.push_back(x.to_json());
    return {{"statement", statement}, {"outcome", outcome}, {"witnesses", w}, {"assumptions", assumptions},
            {"notes", notes}};
  }

 private:
  void add_cell(int p, int q, std::string expected, long long value, bool ok) {
    witnesses.push_back({betti_name(p, q), std::pair{p, q}, std::move(expected), value, ok});
  }
};

}  // namespace koszul
