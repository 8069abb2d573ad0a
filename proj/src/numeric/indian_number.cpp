#include "policystory/numeric/indian_number.hpp"

#include <array>
#include <cctype>

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::numeric {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

struct ScaleWord {
  std::string_view word;
  Scale scale;
};

// Longest spellings first so "lakh crore" is tried before "lakh" or "crore".
constexpr std::array<ScaleWord, 22> kScaleWords{{
    {"lakh crores", Scale::lakh_crore}, {"lakh-crores", Scale::lakh_crore},
    {"lakh crore", Scale::lakh_crore},  {"lakh-crore", Scale::lakh_crore},
    {"lac crores", Scale::lakh_crore},  {"lac crore", Scale::lakh_crore},
    {"thousand", Scale::thousand},      {"trillion", Scale::trillion},
    {"billion", Scale::billion},        {"million", Scale::million},
    {"crores", Scale::crore},           {"crore", Scale::crore},
    {"lakhs", Scale::lakh},             {"lakh", Scale::lakh},
    {"lacs", Scale::lakh},              {"lac", Scale::lakh},
    {"cr.", Scale::crore},              {"cr", Scale::crore},
    {"mn", Scale::million},             {"bn", Scale::billion},
    {"tn", Scale::trillion},            {"k", Scale::thousand},
}};

constexpr std::array<std::string_view, 14> kUnits{
    "tonnes", "tonne", "tons", "ton", "hectares", "hectare", "acres",
    "acre", "quintals", "quintal", "km", "kilometres", "kilometers", "mw"};

// case-insensitive prefix match that must end on a word boundary
bool word_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  if (!text::starts_with_ci(s.substr(pos), word)) return false;
  std::size_t end = pos + word.size();
  return end == s.size() || !std::isalnum(static_cast<unsigned char>(s[end]));
}

std::size_t skip_spaces(std::string_view s, std::size_t pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  return pos;
}

// Validates digit grouping: either plain digits, 3-digit groups (Western) or
// 2-digit groups ending in a 3-digit group (Indian).
bool grouping_ok(std::string_view integer_part) {
  if (integer_part.find(',') == std::string_view::npos) return true;
  std::vector<std::size_t> groups;
  std::size_t len = 0;
  for (char c : integer_part) {
    if (c == ',') {
      groups.push_back(len);
      len = 0;
    } else {
      ++len;
    }
  }
  groups.push_back(len);
  if (groups.front() == 0 || groups.front() > 3 || groups.back() != 3) return false;
  bool western = true, indian = true;
  for (std::size_t i = 1; i + 1 < groups.size(); ++i) {
    western = western && groups[i] == 3;
    indian = indian && groups[i] == 2;
  }
  if (indian && groups.front() > 2 && groups.size() > 2) indian = false;
  return western || indian;
}

}  // namespace

int scale_exponent(Scale s) {
  switch (s) {
    case Scale::unit: return 0;
    case Scale::thousand: return 3;
    case Scale::lakh: return 5;
    case Scale::million: return 6;
    case Scale::crore: return 7;
    case Scale::billion: return 9;
    case Scale::lakh_crore: return 12;
    case Scale::trillion: return 12;
  }
  return 0;
}

std::string scale_word(Scale s) {
  switch (s) {
    case Scale::unit: return "";
    case Scale::thousand: return "thousand";
    case Scale::lakh: return "lakh";
    case Scale::million: return "million";
    case Scale::crore: return "crore";
    case Scale::billion: return "billion";
    case Scale::lakh_crore: return "lakh crore";
    case Scale::trillion: return "trillion";
  }
  return "";
}

corpus::Unit IndianAmount::unit() const {
  if (percent) return corpus::Unit::percent();
  if (inr) return corpus::Unit::inr();
  if (other_unit) return corpus::Unit::named(*other_unit);
  return corpus::Unit::count();
}

std::string IndianAmount::canonical() const {
  std::string s = inr ? "INR " : "";
  s += mantissa.to_string();
  if (scale != Scale::unit) s += " " + scale_word(scale);
  if (percent) s += "%";
  if (other_unit) s += " " + *other_unit;
  return s;
}

IndianAmount parse_indian_number(std::string_view text) {
  IndianAmount a;
  a.raw = std::string(text::trim(text));
  std::string_view s = text;

  // first digit that starts a number (not glued to letters like "FY24" or "G20")
  std::size_t start = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_digit(s[i])) continue;
    if (i > 0 && (is_alpha(s[i - 1]) || is_digit(s[i - 1]))) continue;
    start = i;
    break;
  }
  if (start == std::string_view::npos) {
    throw ParseError("no number in \"" + std::string(text) + "\"");
  }
  if (start > 0 && s[start - 1] == '.') --start;  // ".5"

  // currency marker in the stretch just before the number
  std::string_view before = text::trim(s.substr(0, start));
  bool negative = false;
  if (!before.empty() && before.back() == '-') {
    negative = true;
    before = text::trim(before.substr(0, before.size() - 1));
  }
  auto ends_with_ci = [&](std::string_view marker) {
    if (before.size() < marker.size()) return false;
    if (!text::starts_with_ci(before.substr(before.size() - marker.size()), marker)) return false;
    std::size_t at = before.size() - marker.size();
    return at == 0 || !is_alpha(before[at - 1]);
  };
  a.inr = ends_with_ci("INR") || ends_with_ci("Rs.") || ends_with_ci("Rs") ||
          ends_with_ci("₹") || ends_with_ci("Re.") || ends_with_ci("Re");

  // the number itself
  std::size_t pos = start;
  std::string integer;
  while (pos < s.size()) {
    if (is_digit(s[pos])) {
      integer.push_back(s[pos++]);
    } else if (s[pos] == ',' && pos + 1 < s.size() && is_digit(s[pos + 1]) && !integer.empty()) {
      integer.push_back(s[pos++]);
    } else {
      break;
    }
  }
  std::string fraction;
  if (pos + 1 < s.size() && s[pos] == '.' && is_digit(s[pos + 1])) {
    ++pos;
    while (pos < s.size() && is_digit(s[pos])) fraction.push_back(s[pos++]);
  }
  if (!grouping_ok(integer)) {
    // "1,2,3" is a list, not a number: keep only the leading group
    integer = integer.substr(0, integer.find(','));
    fraction.clear();
  }
  std::string digits;
  for (char c : integer) {
    if (c != ',') digits.push_back(c);
  }
  if (digits.empty()) digits = "0";
  a.mantissa = Decimal::parse(digits + (fraction.empty() ? "" : "." + fraction));
  if (negative) a.mantissa = a.mantissa.negated();

  // what follows: percent, scale word, rupees, unit
  std::size_t after = skip_spaces(s, pos);
  if (after < s.size() && s[after] == '%') {
    a.percent = true;
  } else if (word_at(s, after, "per cent") || word_at(s, after, "percent")) {
    a.percent = true;
  } else {
    for (const auto& sw : kScaleWords) {
      if (word_at(s, after, sw.word)) {
        // "k" only when glued to the number ("20k")
        if (sw.word.size() == 1 && after != pos) continue;
        a.scale = sw.scale;
        after = skip_spaces(s, after + sw.word.size());
        break;
      }
    }
    if (word_at(s, after, "rupees") || word_at(s, after, "rupee")) {
      a.inr = true;
    } else if (!a.inr) {
      for (auto u : kUnits) {
        if (word_at(s, after, u)) {
          a.other_unit = text::to_lower(u);
          break;
        }
      }
    }
  }
  a.normalized = a.mantissa.scaled_by_pow10(scale_exponent(a.scale));
  return a;
}

}  // namespace policystory::numeric
