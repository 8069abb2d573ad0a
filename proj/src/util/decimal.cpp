#include "policystory/util/decimal.hpp"

#include <cctype>
#include <cstdlib>

#include "policystory/util/errors.hpp"

namespace policystory {

Decimal Decimal::parse(std::string_view s) {
  Decimal d;
  std::string_view in = s;
  if (!in.empty() && (in.front() == '-' || in.front() == '+')) {
    d.negative_ = in.front() == '-';
    in.remove_prefix(1);
  }
  std::string digits;
  int frac = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : in) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw ParseError("invalid decimal '" + std::string(s) + "'");
    }
  }
  if (!seen_digit) throw ParseError("invalid decimal '" + std::string(s) + "'");
  d.coefficient_ = digits;
  d.exponent_ = -frac;
  d.normalize();
  return d;
}

void Decimal::normalize() {
  std::size_t lead = coefficient_.find_first_not_of('0');
  if (lead == std::string::npos) {
    coefficient_ = "0";
    exponent_ = 0;
    negative_ = false;
    return;
  }
  coefficient_.erase(0, lead);
  while (coefficient_.size() > 1 && coefficient_.back() == '0') {
    coefficient_.pop_back();
    ++exponent_;
  }
}

Decimal Decimal::scaled_by_pow10(int exponent) const {
  Decimal d = *this;
  if (!d.is_zero()) d.exponent_ += exponent;
  return d;
}

Decimal Decimal::negated() const {
  Decimal d = *this;
  if (!d.is_zero()) d.negative_ = !d.negative_;
  return d;
}

std::string Decimal::to_string() const {
  std::string out = negative_ ? "-" : "";
  if (exponent_ >= 0) {
    out += coefficient_;
    if (!is_zero()) out.append(static_cast<std::size_t>(exponent_), '0');
    return out;
  }
  auto frac = static_cast<std::size_t>(-exponent_);
  if (coefficient_.size() > frac) {
    out += coefficient_.substr(0, coefficient_.size() - frac);
    out += '.';
    out += coefficient_.substr(coefficient_.size() - frac);
  } else {
    out += "0.";
    out.append(frac - coefficient_.size(), '0');
    out += coefficient_;
  }
  return out;
}

double Decimal::to_double() const { return std::strtod(to_string().c_str(), nullptr); }

}  // namespace policystory
