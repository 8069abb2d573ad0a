#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace policystory {

// Exact base-10 number: coefficient digits times a power of ten. Only the
// operations the pipeline needs are provided; scaling by a power of ten is
// exact, so 5.94 lakh crore stays 5940000000000 rather than drifting through a
// binary float.
class Decimal {
 public:
  Decimal() = default;

  // Plain decimal notation: optional sign, digits, optional fraction.
  // Thousands separators are not accepted here. Throws ParseError.
  static Decimal parse(std::string_view s);

  Decimal scaled_by_pow10(int exponent) const;
  Decimal negated() const;

  // Plain notation with no exponent and no trailing fractional zeros.
  std::string to_string() const;
  double to_double() const;

  bool is_zero() const { return coefficient_ == "0"; }
  bool negative() const { return negative_; }
  int exponent() const { return exponent_; }
  const std::string& coefficient() const { return coefficient_; }

  bool operator==(const Decimal&) const = default;

 private:
  void normalize();

  bool negative_ = false;
  std::string coefficient_ = "0";  // no leading zeros, no trailing zeros unless "0"
  int exponent_ = 0;
};

}  // namespace policystory
