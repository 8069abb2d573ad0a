#include "policystory/llm/tokens.hpp"

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::llm {

std::size_t estimate_tokens(std::string_view text) { return (text::utf8_length(text) + 3) / 4; }

TokenBudget TokenBudget::with_reserve_fraction(int context_limit, double fraction) {
  TokenBudget b;
  b.context_limit = context_limit;
  b.reserved_output = static_cast<int>(context_limit * fraction);
  b.validate();
  return b;
}

void TokenBudget::validate() const {
  if (context_limit <= 0) throw ValidationError("TokenBudget: context_limit > 0");
  if (reserved_output < 0 || reserved_output >= context_limit) {
    throw ValidationError("TokenBudget: reserved_output < context_limit");
  }
}

std::vector<std::vector<std::string>> chunk_by_budget(const std::vector<std::string>& items,
                                                      std::size_t max_items,
                                                      const TokenBudget& budget,
                                                      std::size_t prompt_overhead) {
  if (max_items == 0) throw ValidationError("chunk_by_budget: max_items >= 1");
  const auto limit = static_cast<std::size_t>(std::max(budget.input_limit(), 0));
  std::vector<std::vector<std::string>> batches;
  std::vector<std::string> current;
  std::string joined;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (estimate_tokens(items[i]) + prompt_overhead > limit) {
      throw ItemTooLargeError("chunk_by_budget: item " + std::to_string(i) +
                                  " exceeds the token budget on its own",
                              i);
    }
    std::string candidate = current.empty() ? items[i] : joined + "\n" + items[i];
    bool fits = current.size() < max_items && estimate_tokens(candidate) + prompt_overhead <= limit;
    if (!fits) {
      batches.push_back(std::move(current));
      current.clear();
      candidate = items[i];
    }
    current.push_back(items[i]);
    joined = std::move(candidate);
  }
  if (!current.empty()) batches.push_back(std::move(current));
  return batches;
}

}  // namespace policystory::llm

namespace policystory::llm {

std::vector<std::string> split_to_budget(std::string_view text, std::size_t max_tokens) {
  std::vector<std::string> pieces;
  std::string current;
  for (const auto& line : text::split_lines(text)) {
    std::string next = current.empty() ? line : current + "\n" + line;
    if (!current.empty() && estimate_tokens(next) > max_tokens) {
      pieces.push_back(std::move(current));
      next = line;
    }
    current = estimate_tokens(next) > max_tokens
                  ? std::string(text::utf8_prefix(next, max_tokens * 4))
                  : std::move(next);
  }
  if (!text::trim(current).empty()) pieces.push_back(std::move(current));
  return pieces;
}

}  // namespace policystory::llm
