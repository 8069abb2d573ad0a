#pragma once

#include <string>

#include "policystory/corpus/types.hpp"
#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"

namespace policystory::summarize {

inline constexpr std::size_t kSummaryMinSentences = 5;
inline constexpr std::size_t kSummaryMaxSentences = 8;
// Outside [3, 10] the summary is retried once, then kept with a warning.
inline constexpr std::size_t kSummaryAcceptMin = 3;
inline constexpr std::size_t kSummaryAcceptMax = 10;
inline constexpr int kSummaryMaxOutputTokens = 400;
inline constexpr double kNarrativeTemperature = 0.7;

struct ArticleSummary {
  std::string text;
  std::size_t sentences = 0;
  int calls = 0;
  bool body_truncated = false;
  bool length_warning = false;
};

// PreconditionError on an empty body. A body too large for the context
// window is cut (on a sentence boundary when possible) so the prompt fits.
ArticleSummary summarize_article(const corpus::Article& article, llm::Gateway& gateway,
                                 const llm::PromptLibrary& prompts);

}  // namespace policystory::summarize
