#pragma once

#include <string>
#include <vector>

#include "policystory/corpus/types.hpp"
#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"

namespace policystory::summarize {

struct JargonResult {
  std::vector<corpus::GlossaryEntry> entries;  // story_ids left empty
  std::string warning;                         // set when the reply could not be parsed
};

// Parses "term: definition" lines. "NONE" (or an empty reply) means no terms.
// Definitions are cut to their first two sentences; terms repeated within the
// reply keep their first definition.
JargonResult parse_jargon(const std::string& reply);

JargonResult extract_jargon(const std::string& l2_text, llm::Gateway& gateway,
                            const llm::PromptLibrary& prompts);

// Event-level glossary merge: terms match case-insensitively, the first
// spelling and definition seen are kept, story ids are unioned and sorted.
void merge_glossary(std::vector<corpus::GlossaryEntry>& glossary,
                    const std::vector<corpus::GlossaryEntry>& found, const std::string& story_id);

}  // namespace policystory::summarize
