#pragma once

#include <string>
#include <string_view>

#include "policystory/llm/backend.hpp"

namespace policystory::llm {

// Deterministic stand-in for a chat model. The reply is a pure function of
// the request: the task is read from the "[task:NAME]" tag in the system
// prompt and the inputs from the <<SECTION>> ... <</SECTION>> blocks of the
// user prompt.
//
//   classify       first taxonomy label whose label/description keywords
//                  occur in the article text, else the fallback label
//   summary        first 6 sentences of the article body
//   story_first    opening line plus one digest line per batch item
//   story_fold     prior draft, then one digest line per batch item
//   story_brief    first 3 sentences of the story
//   numeric        one "Key: value" line per "INR/Rs/₹ <number> [scale]"
//   jargon         "term: definition" for each built-in glossary term found
class MockBackend final : public ChatBackend {
 public:
  std::string name() const override { return "mock"; }
  BackendReply send(const ChatRequest& request) override;

  static std::string respond(const ChatRequest& request);
};

// Text between <<NAME>> and <</NAME>>, trimmed; empty when absent.
std::string prompt_section(std::string_view prompt, std::string_view name);
// NAME from a "[task:NAME]" tag; empty when absent.
std::string prompt_task(std::string_view system_prompt);

}  // namespace policystory::llm
