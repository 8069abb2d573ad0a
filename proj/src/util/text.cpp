#include "policystory/util/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace policystory::text {
namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

constexpr std::array<std::string_view, 22> kAbbreviations = {
    "rs", "mr", "mrs", "ms", "dr", "prof", "st", "no", "vs", "etc", "e.g", "i.e",
    "jr", "sr", "govt", "dept", "inc", "ltd", "co", "corp", "approx", "sh"};

bool ends_with_abbreviation(std::string_view sentence) {
  // sentence ends with '.', look at the token before it
  std::size_t end = sentence.size() - 1;
  std::size_t begin = end;
  while (begin > 0 && !is_space(sentence[begin - 1]) && sentence[begin - 1] != '(' &&
         sentence[begin - 1] != '"') {
    --begin;
  }
  std::string token = to_lower(sentence.substr(begin, end - begin));
  if (token.empty()) return false;
  if (token.size() == 1 && std::isalpha(static_cast<unsigned char>(token[0]))) return true;
  // dotted initialisms such as "u.s" or "e.g"
  if (token.size() >= 3 && token[1] == '.') return true;
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), token) != kAbbreviations.end();
}

}  // namespace

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if (!is_continuation(static_cast<unsigned char>(c))) ++n;
  }
  return n;
}

std::string_view utf8_prefix(std::string_view s, std::size_t max_code_points) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_continuation(static_cast<unsigned char>(s[i]))) {
      if (seen == max_code_points) return s.substr(0, i);
      ++seen;
    }
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string_view::npos) nl = s.size();
    std::string_view line = s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) out.push_back(collapse_whitespace(t));
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    current.push_back(c);
    if (c != '.' && c != '!' && c != '?') continue;
    // absorb closing quotes/brackets and repeated terminators
    while (i + 1 < s.size() &&
           (s[i + 1] == '"' || s[i + 1] == '\'' || s[i + 1] == ')' || s[i + 1] == '.' ||
            s[i + 1] == '!' || s[i + 1] == '?')) {
      current.push_back(s[++i]);
    }
    bool at_boundary = i + 1 == s.size() || is_space(s[i + 1]);
    if (!at_boundary) continue;
    if (c == '.' && current.back() == '.' && ends_with_abbreviation(trim(current))) continue;
    flush();
  }
  flush();
  return out;
}

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::size_t find_phrase_ci(std::string_view haystack, std::string_view phrase, std::size_t from) {
  if (phrase.empty() || phrase.size() > haystack.size()) return std::string_view::npos;
  for (std::size_t i = from; i + phrase.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < phrase.size(); ++j) {
      if (lower(haystack[i + j]) != lower(phrase[j])) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    bool left_ok = i == 0 || !is_word_byte(static_cast<unsigned char>(haystack[i - 1])) ||
                   !is_word_byte(static_cast<unsigned char>(phrase.front()));
    std::size_t after = i + phrase.size();
    bool right_ok = after == haystack.size() ||
                    !is_word_byte(static_cast<unsigned char>(haystack[after])) ||
                    !is_word_byte(static_cast<unsigned char>(phrase.back()));
    if (left_ok && right_ok) return i;
  }
  return std::string_view::npos;
}

bool contains_phrase_ci(std::string_view haystack, std::string_view phrase) {
  return find_phrase_ci(haystack, phrase) != std::string_view::npos;
}

std::string slugify(std::string_view s) {
  std::string out;
  bool dash = false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (dash && !out.empty()) out.push_back('-');
      dash = false;
      out.push_back(lower(c));
    } else {
      dash = true;
    }
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (lower(s[i]) != lower(prefix[i])) return false;
  }
  return true;
}

}  // namespace policystory::text
