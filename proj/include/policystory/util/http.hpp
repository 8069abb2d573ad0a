#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace policystory::http {

using Headers = std::vector<std::pair<std::string, std::string>>;

struct Response {
  int status = 0;  // 0: no response (connection failure, timeout, bad URL)
  std::string body;
  std::string error;
};

// Single attempt; never throws for network trouble, which is reported as
// status 0 with a message. Redirects are followed.
Response get(const std::string& url, const Headers& headers = {},
             std::chrono::seconds timeout = std::chrono::seconds(30));
Response post_json(const std::string& url, const std::string& body, const Headers& headers = {},
                   std::chrono::seconds timeout = std::chrono::seconds(120));

// Percent-encodes a query parameter value.
std::string url_encode(const std::string& value);

}  // namespace policystory::http
