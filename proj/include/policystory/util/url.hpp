#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace policystory {

struct UrlParts {
  std::string scheme;
  std::string host;  // may include :port
  std::string path;
  std::string query;     // without '?'
  std::string fragment;  // without '#'
};

// Splits scheme://host/path?query#fragment; nullopt when not absolute.
std::optional<UrlParts> split_url(std::string_view url);
bool is_absolute_url(std::string_view url);

// Canonical form used for deduplication and article ids: scheme and host
// lowercased, fragment dropped, tracking parameters (utm_*, fbclid, gclid,
// ...) removed, trailing slash stripped.
std::string canonicalize_url(std::string_view url);

// Lowercase hex SHA-256 of the canonical URL.
std::string article_id_for_url(std::string_view url);

}  // namespace policystory
