#include "policystory/util/http.hpp"

#include <httplib.h>

#include "policystory/util/url.hpp"

namespace policystory::http {
namespace {

template <typename Call>
Response perform(const std::string& url, std::chrono::seconds timeout, Call call) {
  auto parts = split_url(url);
  if (!parts) return {0, {}, "not an absolute URL: " + url};
  std::string origin = parts->scheme + "://" + parts->host;
  std::string target = parts->path.empty() ? "/" : parts->path;
  if (!parts->query.empty()) target += "?" + parts->query;
  try {
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Result res = call(client, target);
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, res->body, {}};
  } catch (const std::exception& e) {
    return {0, {}, e.what()};
  }
}

httplib::Headers to_httplib(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

}  // namespace

Response get(const std::string& url, const Headers& headers, std::chrono::seconds timeout) {
  return perform(url, timeout, [&](httplib::Client& c, const std::string& target) {
    return c.Get(target, to_httplib(headers));
  });
}

Response post_json(const std::string& url, const std::string& body, const Headers& headers,
                   std::chrono::seconds timeout) {
  return perform(url, timeout, [&](httplib::Client& c, const std::string& target) {
    return c.Post(target, to_httplib(headers), body, "application/json");
  });
}

std::string url_encode(const std::string& value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

}  // namespace policystory::http
