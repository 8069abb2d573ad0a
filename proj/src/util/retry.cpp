#include "policystory/util/retry.hpp"

#include <algorithm>
#include <thread>

namespace policystory {

std::chrono::milliseconds RetryPolicy::delay_before_retry(int retry_index) const {
  auto delay = base_delay;
  for (int i = 0; i < retry_index && delay < max_delay; ++i) delay *= 2;
  return std::min(delay, max_delay);
}

void RetryPolicy::wait_before_retry(int retry_index) const {
  auto d = delay_before_retry(retry_index);
  if (sleep) {
    sleep(d);
  } else {
    std::this_thread::sleep_for(d);
  }
}

}  // namespace policystory
