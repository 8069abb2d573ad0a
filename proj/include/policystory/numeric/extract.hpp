#pragma once

#include <string>
#include <vector>

#include "policystory/corpus/types.hpp"
#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"

namespace policystory::numeric {

inline constexpr double kNumericTemperature = 0.2;

struct NumericResult {
  std::vector<corpus::NumericFact> facts;
  std::vector<std::string> warnings;  // unparseable values, conflicting duplicates
};

// Line-by-line "key: value" parse of a model reply. Values holding a number
// are normalized; others are kept raw. The first occurrence of a key (case-
// insensitive) wins. Never throws; at most one fact per reply line.
NumericResult parse_numeric_reply(const std::string& reply);

// Asks the model for the story's key figures and parses the reply.
NumericResult extract_numeric(const std::string& l2_text, llm::Gateway& gateway,
                              const llm::PromptLibrary& prompts);

}  // namespace policystory::numeric
