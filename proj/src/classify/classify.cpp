#include "policystory/classify/classify.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::classify {

namespace {

// Lowercase, every non-alphanumeric byte becomes a space, "and" is dropped so
// that "Agriculture and Rural" still finds "agriculture & rural". Padded with
// spaces so a whole-phrase test is a plain substring test.
std::string normalize(std::string_view s) {
  std::string spaced;
  spaced.reserve(s.size());
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) {
      spaced.push_back(static_cast<char>(std::tolower(c)));
    } else {
      spaced.push_back(' ');
    }
  }
  std::istringstream words(spaced);
  std::string out = " ";
  for (std::string w; words >> w;) {
    if (w == "and") continue;
    out += w;
    out += ' ';
  }
  return out;
}

std::string first_line(std::string_view raw) {
  for (const auto& line : text::split_lines(raw)) {
    auto t = text::trim(line);
    if (!t.empty()) return std::string(t);
  }
  return {};
}

bool phrase_in(const std::string& haystack, const std::string& needle) {
  return needle.size() > 2 && haystack.find(needle) != std::string::npos;
}

}  // namespace

LabelMatch parse_label(std::string_view raw_output, const corpus::TopicTaxonomy& taxonomy) {
  const std::string line = normalize(first_line(raw_output));
  for (const auto& topic : taxonomy.topics) {
    if (topic.topic_id == taxonomy.fallback_topic_id) continue;
    if (phrase_in(line, normalize(topic.label)) || phrase_in(line, normalize(topic.topic_id))) {
      return {topic.topic_id, false};
    }
  }
  return {taxonomy.fallback_topic_id, true};
}

std::string render_taxonomy(const corpus::TopicTaxonomy& taxonomy) {
  std::string out;
  for (const auto& t : taxonomy.substantive()) {
    if (!out.empty()) out += '\n';
    out += "- " + t.label + ": " + t.description;
  }
  return out;
}

ClassificationResult classify_article(const corpus::Article& article,
                                      const corpus::PolicyEvent& event, llm::Gateway& gateway,
                                      const llm::PromptLibrary& prompts) {
  if (text::trim(article.title).empty() || text::trim(article.first_paragraph).empty()) {
    throw PreconditionError("classify " + article.article_id +
                            ": title and first_paragraph required");
  }
  const auto& taxonomy = event.taxonomy;
  const auto* fallback = taxonomy.find(taxonomy.fallback_topic_id);

  llm::PromptVars vars{{"EVENT_NAME", event.name},
                       {"TAXONOMY", render_taxonomy(taxonomy)},
                       {"FALLBACK_LABEL", fallback ? fallback->label : taxonomy.fallback_topic_id},
                       {"TITLE", article.title},
                       {"FIRST_PARAGRAPH", article.first_paragraph}};

  llm::ChatRequest request;
  request.max_output_tokens = kClassifyMaxOutputTokens;
  request.temperature = kClassifyTemperature;
  request.backend_tag = "classify:" + article.article_id;

  auto fill = [&] {
    auto rendered = prompts.render("classify", vars);
    request.system_prompt = std::move(rendered.system);
    request.user_prompt = std::move(rendered.user);
  };
  fill();

  // a freakishly long lead paragraph is shortened rather than failing the article
  const auto& budget = gateway.budget();
  const auto limit = static_cast<std::size_t>(budget.input_limit());
  const auto fixed = request.estimated_input_tokens() - llm::estimate_tokens(article.first_paragraph);
  if (request.estimated_input_tokens() > limit && fixed < limit) {
    const std::size_t keep_chars = (limit - fixed - std::min<std::size_t>(limit - fixed, 2)) * 4;
    vars["FIRST_PARAGRAPH"] = std::string(text::utf8_prefix(article.first_paragraph, keep_chars));
    fill();
  }

  std::string raw;
  try {
    raw = gateway.complete(request);
  } catch (const Error&) {
    rethrow_with_context("article " + article.article_id);
  }

  auto match = parse_label(raw, taxonomy);
  return {article.article_id, match.topic_id, raw, match.fallback_used};
}

}  // namespace policystory::classify
