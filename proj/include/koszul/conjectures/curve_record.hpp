#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "koszul/polyring/ideal.hpp"

namespace koszul {

/// An embedded curve model: its ideal plus metadata that cannot be read off
/// the equations (genus, embedding degree, Clifford index, gonality).
template <Field F>
struct CurveRecord {
  Ideal<F> ideal;
  int genus = 0;
  int degree = 0;  // degree of the embedding line bundle
  int ambient = 0; // r, the curve lives in P^r
  std::optional<int> clifford;
  std::optional<int> gonality;
  std::string tag;  // "canonical", "prym-canonical", or free text

  bool is_canonical() const { return tag == "canonical"; }

  /// Throws std::invalid_argument when the metadata contradicts the ideal.
  void validate() const {
    if (ambient + 1 != static_cast<int>(ideal.num_vars()))
      throw std::invalid_argument("CurveRecord: r + 1 must equal the number of variables");
    if (genus < 0 || degree < 0) throw std::invalid_argument("CurveRecord: genus and degree must be >= 0");
    if (is_canonical() && (degree != 2 * genus - 2 || ambient != genus - 1))
      throw std::invalid_argument("CurveRecord: canonical curves need d = 2g - 2 and r = g - 1");
  }
};

using AnyCurveRecord = std::variant<CurveRecord<PrimeField>, CurveRecord<RationalField>>;

}  // namespace koszul
