#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>

#include "policystory/llm/backend.hpp"
#include "policystory/llm/tokens.hpp"
#include "policystory/util/retry.hpp"

namespace policystory::llm {

struct GatewayOptions {
  TokenBudget budget;
  RetryPolicy retry;
  std::size_t concurrency = 2;
  std::optional<std::filesystem::path> log_path;
  // Also write full prompt text into the request log.
  bool log_prompts = false;
};

// Single choke point for model calls. Enforces the context budget before
// anything is sent, retries transient failures (no response, 429, 5xx) with
// exponential backoff, bounds in-flight calls and appends one JSON line per
// call to the request log. Thread-safe.
class Gateway {
 public:
  Gateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options);

  // Throws BudgetError (nothing sent), PermanentError (4xx other than 429),
  // TransportError (retries exhausted) or DecodeError (malformed reply).
  std::string complete(const ChatRequest& request);

  const TokenBudget& budget() const { return options_.budget; }
  std::string backend_name() const { return backend_->name(); }
  // Requests that reached the backend (one per complete() call, however many
  // attempts it took).
  std::size_t calls() const { return calls_.load(); }

 private:
  void log(const ChatRequest& request, std::size_t estimate, int attempts,
           std::chrono::milliseconds latency, const std::string& status,
           const std::string& error);

  std::shared_ptr<ChatBackend> backend_;
  GatewayOptions options_;
  std::counting_semaphore<1024> limiter_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> sequence_{0};
  std::mutex log_mutex_;
  std::ofstream log_;
};

}  // namespace policystory::llm
