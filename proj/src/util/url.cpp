#include "policystory/util/url.hpp"

#include <array>
#include <cctype>
#include <vector>

#include "policystory/util/errors.hpp"
#include "policystory/util/hash.hpp"
#include "policystory/util/text.hpp"

namespace policystory {
namespace {

constexpr std::array<std::string_view, 11> kTrackingParams = {
    "fbclid", "gclid", "dclid", "msclkid", "mc_cid", "mc_eid",
    "igshid", "ocid",  "cmpid", "_ga",     "ref_src"};

bool is_tracking_param(std::string_view name) {
  std::string lower = text::to_lower(name);
  if (lower.rfind("utm_", 0) == 0) return true;
  for (auto p : kTrackingParams) {
    if (lower == p) return true;
  }
  return false;
}

}  // namespace

std::optional<UrlParts> split_url(std::string_view url) {
  url = text::trim(url);
  auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  UrlParts parts;
  parts.scheme = std::string(url.substr(0, sep));
  for (char c : parts.scheme) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return std::nullopt;
    }
  }
  std::string_view rest = url.substr(sep + 3);
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    parts.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    parts.query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  auto slash = rest.find('/');
  parts.host = std::string(rest.substr(0, slash));
  parts.path = slash == std::string_view::npos ? "" : std::string(rest.substr(slash));
  if (parts.host.empty()) return std::nullopt;
  return parts;
}

bool is_absolute_url(std::string_view url) { return split_url(url).has_value(); }

std::string canonicalize_url(std::string_view url) {
  auto parts = split_url(url);
  if (!parts) throw ValidationError("not an absolute URL: '" + std::string(url) + "'");
  std::string out = text::to_lower(parts->scheme) + "://" + text::to_lower(parts->host);
  std::string path = parts->path;
  while (!path.empty() && path.back() == '/') path.pop_back();
  out += path;
  std::vector<std::string> kept;
  std::string_view q = parts->query;
  while (!q.empty()) {
    auto amp = q.find('&');
    std::string_view pair = q.substr(0, amp);
    std::string_view name = pair.substr(0, pair.find('='));
    if (!pair.empty() && !is_tracking_param(name)) kept.emplace_back(pair);
    if (amp == std::string_view::npos) break;
    q.remove_prefix(amp + 1);
  }
  if (!kept.empty()) out += "?" + text::join(kept, "&");
  return out;
}

std::string article_id_for_url(std::string_view url) { return sha256_hex(canonicalize_url(url)); }

}  // namespace policystory
