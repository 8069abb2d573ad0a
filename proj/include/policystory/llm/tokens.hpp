#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace policystory::llm {

inline constexpr int kDefaultContextLimit = 4096;
inline constexpr double kDefaultReserveFraction = 0.15;
inline constexpr std::size_t kDefaultBatchItems = 20;

// ceil(code points / 4). Deterministic, monotone in length, and
// estimate(a + b) <= estimate(a) + estimate(b) + 1.
std::size_t estimate_tokens(std::string_view text);

struct TokenBudget {
  int context_limit = kDefaultContextLimit;
  int reserved_output = static_cast<int>(kDefaultContextLimit * kDefaultReserveFraction);
  std::string estimator = "chars/4";

  static TokenBudget with_reserve_fraction(int context_limit, double fraction);
  // Tokens available for system + user prompt.
  int input_limit() const { return context_limit - reserved_output; }
  void validate() const;
};

// Greedy left-to-right packing. A batch closes when adding the next item would
// exceed max_items, or when the batch text (items joined by "\n") plus
// prompt_overhead would exceed budget.input_limit(). Throws ItemTooLargeError
// naming the first item that cannot fit even alone.
std::vector<std::vector<std::string>> chunk_by_budget(const std::vector<std::string>& items,
                                                      std::size_t max_items,
                                                      const TokenBudget& budget,
                                                      std::size_t prompt_overhead);

}  // namespace policystory::llm

namespace policystory::llm {

// Splits text on line boundaries into pieces of at most max_tokens each
// (a single overlong line is cut). Used when a story must go through a
// prompt in several parts.
std::vector<std::string> split_to_budget(std::string_view text, std::size_t max_tokens);

}  // namespace policystory::llm
