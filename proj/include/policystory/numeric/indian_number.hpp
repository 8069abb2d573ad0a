#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "policystory/corpus/types.hpp"
#include "policystory/util/decimal.hpp"

namespace policystory::numeric {

enum class Scale { unit, thousand, lakh, million, crore, billion, lakh_crore, trillion };

int scale_exponent(Scale s);
// "lakh crore", "crore", ... ; empty for unit
std::string scale_word(Scale s);

struct IndianAmount {
  std::string raw;
  Decimal mantissa;
  Scale scale = Scale::unit;
  bool inr = false;      // currency marker seen
  bool percent = false;  // "%", "per cent", "percent"
  std::optional<std::string> other_unit;  // tonnes, hectares, ...
  Decimal normalized;    // mantissa x 10^scale, exact

  corpus::Unit unit() const;
  // "INR 5.94 lakh crore", "4.5%", "12 lakh tonnes"; parses back to the same
  // normalized value.
  std::string canonical() const;
};

// Finds the first number in text and reads the markers around it: currency
// (INR, Rs., Rs, ₹, or "rupees" after), thousands separators in either
// Western (1,234,567) or Indian (12,34,567) grouping, a scale word (longest
// match, so "lakh crore" beats "crore"), and percent or a measurement unit.
// Throws ParseError when there is no number.
IndianAmount parse_indian_number(std::string_view text);

}  // namespace policystory::numeric
