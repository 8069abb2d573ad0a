#include "policystory/llm/gateway.hpp"

#include <algorithm>

#include <json.hpp>

#include "policystory/llm/mock_backend.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/hash.hpp"

namespace policystory::llm {

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      limiter_(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(options_.concurrency, 1, 1024))) {
  options_.budget.validate();
  if (options_.retry.max_attempts < 1) options_.retry.max_attempts = 1;
  if (options_.log_path) {
    if (options_.log_path->has_parent_path()) {
      std::filesystem::create_directories(options_.log_path->parent_path());
    }
    log_.open(*options_.log_path, std::ios::app);
    if (!log_) throw IoError("cannot open request log " + options_.log_path->string());
  }
}

std::string Gateway::complete(const ChatRequest& request) {
  using clock = std::chrono::steady_clock;
  const std::size_t estimate = request.estimated_input_tokens();
  const auto total = estimate + static_cast<std::size_t>(std::max(request.max_output_tokens, 0));
  if (request.max_output_tokens < 1 || total > static_cast<std::size_t>(options_.budget.context_limit)) {
    std::string msg = "request needs " + std::to_string(total) + " tokens (" +
                      std::to_string(estimate) + " input + " +
                      std::to_string(request.max_output_tokens) + " output), context limit is " +
                      std::to_string(options_.budget.context_limit);
    log(request, estimate, 0, std::chrono::milliseconds(0), "budget_rejected", msg);
    throw BudgetError(msg);
  }
  if (request.temperature < 0.0 || request.temperature > 2.0) {
    throw ValidationError("ChatRequest: temperature in [0, 2]");
  }

  limiter_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{limiter_};

  ++calls_;
  const auto started = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - started);
  };
  BackendReply reply;
  int attempt = 0;
  for (; attempt < options_.retry.max_attempts; ++attempt) {
    if (attempt > 0) options_.retry.wait_before_retry(attempt - 1);
    try {
      reply = backend_->send(request);
    } catch (const DecodeError& e) {
      log(request, estimate, attempt + 1, elapsed(), "decode_error", e.what());
      throw;
    }
    if (reply.status == 200) {
      log(request, estimate, attempt + 1, elapsed(), "ok", "");
      return reply.text;
    }
    bool transient = reply.status == 0 || reply.status == 429 || reply.status >= 500;
    if (!transient) {
      std::string msg = "backend " + backend_->name() + " rejected the request with HTTP " +
                        std::to_string(reply.status) + ": " + reply.error;
      log(request, estimate, attempt + 1, elapsed(), "permanent_error", msg);
      throw PermanentError(msg, reply.status);
    }
  }
  std::string msg = "backend " + backend_->name() + " failed after " + std::to_string(attempt) +
                    " attempts (last status " + std::to_string(reply.status) +
                    (reply.error.empty() ? "" : ", " + reply.error) + ")";
  log(request, estimate, attempt, elapsed(), "transport_error", msg);
  throw TransportError(msg, reply.status);
}

void Gateway::log(const ChatRequest& request, std::size_t estimate, int attempts,
                  std::chrono::milliseconds latency, const std::string& status,
                  const std::string& error) {
  if (!log_.is_open()) return;
  nlohmann::ordered_json line{
      {"seq", sequence_++},
      {"task", prompt_task(request.system_prompt)},
      {"backend", backend_->name()},
      {"backend_tag", request.backend_tag},
      {"prompt_sha256", sha256_hex(request.system_prompt + "\n\n" + request.user_prompt)},
      {"estimated_input_tokens", estimate},
      {"max_output_tokens", request.max_output_tokens},
      {"estimated_total_tokens", estimate + static_cast<std::size_t>(std::max(request.max_output_tokens, 0))},
      {"context_limit", options_.budget.context_limit},
      {"temperature", request.temperature},
      {"attempts", attempts},
      {"latency_ms", latency.count()},
      {"status", status}};
  if (!error.empty()) line["error"] = error;
  if (options_.log_prompts) {
    line["system_prompt"] = request.system_prompt;
    line["user_prompt"] = request.user_prompt;
  }
  std::lock_guard lock(log_mutex_);
  log_ << line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  log_.flush();
}

}  // namespace policystory::llm
