#pragma once

#include <string>
#include <string_view>

#include "policystory/corpus/types.hpp"
#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"

namespace policystory::classify {

struct ClassificationResult {
  std::string article_id;
  std::string topic_id;
  std::string raw_model_output;
  bool fallback_used = false;
};

struct LabelMatch {
  std::string topic_id;
  bool fallback_used = false;

  bool operator==(const LabelMatch&) const = default;
};

// Total and deterministic. Looks only at the first non-empty output line;
// case, quotes, punctuation and "&"/"and" are ignored. A topic matches when
// its label or its id appears as a whole phrase; the earliest matching topic
// in taxonomy order wins. The fallback topic itself is never matched: no
// match yields (fallback_topic_id, true).
LabelMatch parse_label(std::string_view raw_output, const corpus::TopicTaxonomy& taxonomy);

// "- Label: description" per substantive topic, in taxonomy order.
std::string render_taxonomy(const corpus::TopicTaxonomy& taxonomy);

inline constexpr int kClassifyMaxOutputTokens = 32;
inline constexpr double kClassifyTemperature = 0.2;

// One gateway call per article. The prompt carries the taxonomy plus the
// article's title and first paragraph, never the rest of the body (the first
// paragraph is shortened if it alone would overflow the budget). Gateway
// errors are rethrown with the article id prepended.
ClassificationResult classify_article(const corpus::Article& article,
                                      const corpus::PolicyEvent& event, llm::Gateway& gateway,
                                      const llm::PromptLibrary& prompts);

}  // namespace policystory::classify
