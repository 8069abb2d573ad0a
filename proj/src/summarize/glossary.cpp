#include "policystory/summarize/glossary.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "policystory/llm/tokens.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::summarize {

namespace {

// "1. ", "- ", "* ", "• " and surrounding quotes or bold markers
std::string clean_term(std::string_view t) {
  t = text::trim(t);
  if (t.rfind("•", 0) == 0) t.remove_prefix(std::string_view("•").size());
  while (!t.empty() && (t[0] == '-' || t[0] == '*')) t.remove_prefix(1);
  std::size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i > 0 && i < t.size() && (t[i] == '.' || t[i] == ')')) t.remove_prefix(i + 1);
  t = text::trim(t);
  while (!t.empty() && (t.front() == '"' || t.front() == '\'' || t.front() == '*')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == '"' || t.back() == '\'' || t.back() == '*')) t.remove_suffix(1);
  return std::string(text::trim(t));
}

}  // namespace

JargonResult parse_jargon(const std::string& reply) {
  JargonResult out;
  auto body = text::trim(reply);
  if (body.empty()) return out;
  std::string upper;
  for (char c : body) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper.rfind("NONE", 0) == 0 && body.size() <= 6) return out;

  std::set<std::string> seen;
  for (const auto& line : text::split_lines(body)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    auto term = clean_term(std::string_view(line).substr(0, colon));
    auto def = text::trim(std::string_view(line).substr(colon + 1));
    if (term.empty() || def.empty() || text::word_count(term) > 6) continue;
    auto sentences = text::split_sentences(def);
    if (sentences.size() > 2) sentences.resize(2);
    auto key = text::to_lower(term);
    if (!seen.insert(key).second) continue;
    out.entries.push_back({term, text::join(sentences, " "), {}});
  }
  if (out.entries.empty()) {
    out.warning = "jargon reply had no \"term: definition\" lines";
  }
  return out;
}

JargonResult extract_jargon(const std::string& l2_text, llm::Gateway& gateway,
                            const llm::PromptLibrary& prompts) {
  if (text::trim(l2_text).empty()) throw PreconditionError("extract_jargon: L2 text is empty");
  const auto& budget = gateway.budget();
  llm::ChatRequest request;
  request.max_output_tokens = 400;
  request.temperature = 0.2;
  request.backend_tag = "jargon";

  // one call per piece of the story that fits the prompt; usually one
  const auto overhead = [&] {
    auto p = prompts.render("jargon", {{"STORY", ""}});
    return llm::estimate_tokens(p.system) + llm::estimate_tokens(p.user) + 2;
  }();
  const auto room = static_cast<std::size_t>(budget.input_limit()) - overhead;
  const auto pieces = llm::split_to_budget(l2_text, room);

  JargonResult out;
  std::set<std::string> seen;
  for (const auto& piece : pieces) {
    auto p = prompts.render("jargon", {{"STORY", piece}});
    request.system_prompt = std::move(p.system);
    request.user_prompt = std::move(p.user);
    auto parsed = parse_jargon(gateway.complete(request));
    if (!parsed.warning.empty() && out.warning.empty()) out.warning = parsed.warning;
    for (auto& e : parsed.entries) {
      if (seen.insert(text::to_lower(e.term)).second) out.entries.push_back(std::move(e));
    }
  }
  if (!out.entries.empty()) out.warning.clear();
  return out;
}

void merge_glossary(std::vector<corpus::GlossaryEntry>& glossary,
                    const std::vector<corpus::GlossaryEntry>& found, const std::string& story_id) {
  for (const auto& entry : found) {
    auto key = text::to_lower(entry.term);
    auto it = std::find_if(glossary.begin(), glossary.end(),
                           [&](const auto& g) { return text::to_lower(g.term) == key; });
    if (it == glossary.end()) {
      glossary.push_back({entry.term, entry.definition, {}});
      it = std::prev(glossary.end());
    }
    auto& ids = it->story_ids;
    if (std::find(ids.begin(), ids.end(), story_id) == ids.end()) ids.push_back(story_id);
    std::sort(ids.begin(), ids.end());
  }
}

}  // namespace policystory::summarize
