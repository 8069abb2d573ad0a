#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace policystory::text {

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

// Longest prefix of s holding at most max_code_points code points.
std::string_view utf8_prefix(std::string_view s, std::size_t max_code_points);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split_lines(std::string_view s);

// Sentence segmentation on . ! ? followed by whitespace, with the usual
// abbreviations (Rs., Mr., Dr., single initials, ...) and decimals kept intact.
std::vector<std::string> split_sentences(std::string_view s);

std::size_t word_count(std::string_view s);

// Case-insensitive whole-word (or whole-phrase) search. Word characters are
// ASCII alphanumerics and any non-ASCII byte.
bool contains_phrase_ci(std::string_view haystack, std::string_view phrase);
std::size_t find_phrase_ci(std::string_view haystack, std::string_view phrase,
                           std::size_t from = 0);

// Lowercase ASCII alnum runs joined by '-'.
std::string slugify(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

}  // namespace policystory::text
