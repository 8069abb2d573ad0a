#include "policystory/numeric/extract.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "policystory/llm/tokens.hpp"
#include "policystory/numeric/indian_number.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::numeric {

namespace {

std::string strip_key(std::string_view k) {
  k = text::trim(k);
  while (!k.empty() && (k[0] == '-' || k[0] == '*')) k = text::trim(k.substr(1));
  if (k.rfind("•", 0) == 0) k = text::trim(k.substr(std::string_view("•").size()));
  std::size_t i = 0;
  while (i < k.size() && std::isdigit(static_cast<unsigned char>(k[i]))) ++i;
  if (i > 0 && i < k.size() && (k[i] == '.' || k[i] == ')')) k = text::trim(k.substr(i + 1));
  while (!k.empty() && (k.front() == '*' || k.front() == '"')) k.remove_prefix(1);
  while (!k.empty() && (k.back() == '*' || k.back() == '"')) k.remove_suffix(1);
  return std::string(text::trim(k));
}

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

NumericResult parse_numeric_reply(const std::string& reply) {
  NumericResult out;
  std::map<std::string, std::size_t> index;  // lowercased key -> fact position
  for (const auto& line : text::split_lines(reply)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = strip_key(std::string_view(line).substr(0, colon));
    std::string value(text::trim(std::string_view(line).substr(colon + 1)));
    while (!value.empty() && (value.back() == '*')) value.pop_back();
    if (key.empty() || value.empty()) continue;

    auto lowered = text::to_lower(key);
    if (auto it = index.find(lowered); it != index.end()) {
      const auto& kept = out.facts[it->second];
      if (kept.raw_value != value) {
        out.warnings.push_back("numeric: conflicting values for \"" + kept.key + "\": kept \"" +
                               kept.raw_value + "\", dropped \"" + value + "\"");
      }
      continue;
    }

    corpus::NumericFact fact;
    fact.key = key;
    fact.raw_value = value;
    if (has_digit(value)) {
      try {
        auto amount = parse_indian_number(value);
        fact.normalized_value = amount.normalized;
        fact.unit = amount.unit();
      } catch (const Error& e) {
        out.warnings.push_back("numeric: kept \"" + key + "\" unnormalized: " + e.what());
      }
    }
    index.emplace(lowered, out.facts.size());
    out.facts.push_back(std::move(fact));
  }
  return out;
}

NumericResult extract_numeric(const std::string& l2_text, llm::Gateway& gateway,
                              const llm::PromptLibrary& prompts) {
  if (text::trim(l2_text).empty()) throw PreconditionError("extract_numeric: L2 text is empty");
  const auto& budget = gateway.budget();
  llm::ChatRequest request;
  request.max_output_tokens = 400;
  request.temperature = kNumericTemperature;
  request.backend_tag = "numeric";

  auto probe = prompts.render("numeric", {{"STORY", ""}});
  const auto overhead = llm::estimate_tokens(probe.system) + llm::estimate_tokens(probe.user) + 2;
  const auto room = static_cast<std::size_t>(budget.input_limit()) - overhead;

  // replies from every piece are parsed together so first-wins spans the story
  std::string replies;
  for (const auto& piece : llm::split_to_budget(l2_text, room)) {
    auto p = prompts.render("numeric", {{"STORY", piece}});
    request.system_prompt = std::move(p.system);
    request.user_prompt = std::move(p.user);
    replies += gateway.complete(request);
    replies += "\n";
  }
  return parse_numeric_reply(replies);
}

}  // namespace policystory::numeric
