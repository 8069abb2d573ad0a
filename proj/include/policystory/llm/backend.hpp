#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace policystory::llm {

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  int max_output_tokens = 512;
  double temperature = 0.2;
  std::string backend_tag;

  std::size_t estimated_input_tokens() const;
};

// Outcome of one attempt. status 200 carries text; 0 means no HTTP response.
struct BackendReply {
  int status = 0;
  std::string text;
  std::string error;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string name() const = 0;
  virtual BackendReply send(const ChatRequest& request) = 0;
};

struct HttpBackendOptions {
  std::string base_url;
  std::string model;
  std::optional<std::string> api_key;
  std::chrono::seconds timeout{120};
};

// POST {base}/v1/chat/completions with
//   {"model", "messages": [{"role","content"}...], "max_tokens", "temperature"}
// and reads choices[0].message.content. A 200 whose body lacks that path is
// reported as a DecodeError.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendOptions options);
  std::string name() const override { return "http:" + options_.model; }
  BackendReply send(const ChatRequest& request) override;

  static std::string encode_request(const ChatRequest& request, const std::string& model);
  static std::string decode_response(const std::string& body);

 private:
  HttpBackendOptions options_;
};

}  // namespace policystory::llm
