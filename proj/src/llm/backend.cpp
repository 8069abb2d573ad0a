#include "policystory/llm/backend.hpp"

#include <json.hpp>

#include "policystory/llm/tokens.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/http.hpp"

namespace policystory::llm {

using nlohmann::json;

std::size_t ChatRequest::estimated_input_tokens() const {
  return estimate_tokens(system_prompt) + estimate_tokens(user_prompt);
}

HttpChatBackend::HttpChatBackend(HttpBackendOptions options) : options_(std::move(options)) {
  while (!options_.base_url.empty() && options_.base_url.back() == '/') options_.base_url.pop_back();
}

std::string HttpChatBackend::encode_request(const ChatRequest& request, const std::string& model) {
  json messages = json::array();
  if (!request.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user_prompt}});
  json body{{"model", model},
            {"messages", messages},
            {"max_tokens", request.max_output_tokens},
            {"temperature", request.temperature}};
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string HttpChatBackend::decode_response(const std::string& body) {
  try {
    json j = json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw DecodeError("chat response: content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw DecodeError(std::string("chat response: ") + e.what());
  }
}

BackendReply HttpChatBackend::send(const ChatRequest& request) {
  http::Headers headers{{"Accept", "application/json"}};
  if (options_.api_key && !options_.api_key->empty()) {
    headers.emplace_back("Authorization", "Bearer " + *options_.api_key);
  }
  http::Response r = http::post_json(options_.base_url + "/v1/chat/completions",
                                     encode_request(request, options_.model), headers,
                                     options_.timeout);
  if (r.status != 200) return {r.status, {}, r.error.empty() ? r.body.substr(0, 200) : r.error};
  return {200, decode_response(r.body), {}};
}

}  // namespace policystory::llm
