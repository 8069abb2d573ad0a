#pragma once

#include <chrono>
#include <functional>
#include <vector>

namespace policystory {

// Exponential backoff: the delay before retry k (0-based) is
// min(base_delay * 2^k, max_delay), so delays never decrease.
struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{8000};
  // Injected so tests can record delays instead of sleeping.
  std::function<void(std::chrono::milliseconds)> sleep;

  std::chrono::milliseconds delay_before_retry(int retry_index) const;
  void wait_before_retry(int retry_index) const;
};

}  // namespace policystory
