#include "policystory/summarize/article.hpp"

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::summarize {

namespace {

std::string correction_note(std::size_t got) {
  return "\n\nYour previous summary had " + std::to_string(got) +
         " sentences. Rewrite it in 5 to 8 complete sentences.";
}

// Longest prefix within max_chars code points, pulled back to the last
// sentence end when that still keeps most of it.
std::string cut_body(const std::string& body, std::size_t max_chars) {
  std::string cut(text::utf8_prefix(body, max_chars));
  auto end = cut.find_last_of(".!?");
  if (end != std::string::npos && end + 1 >= cut.size() / 2) cut.resize(end + 1);
  return cut;
}

}  // namespace

ArticleSummary summarize_article(const corpus::Article& article, llm::Gateway& gateway,
                                 const llm::PromptLibrary& prompts) {
  if (text::trim(article.body).empty()) {
    throw PreconditionError("summarize " + article.article_id + ": body is empty");
  }
  ArticleSummary out;
  llm::PromptVars vars{{"TITLE", article.title},
                       {"DATE", article.published_at.iso()},
                       {"BODY", article.body}};

  llm::ChatRequest request;
  request.max_output_tokens = kSummaryMaxOutputTokens;
  request.temperature = kNarrativeTemperature;
  request.backend_tag = "summary:" + article.article_id;

  auto build = [&](const std::string& extra) {
    auto r = prompts.render("summary", vars);
    request.system_prompt = std::move(r.system);
    request.user_prompt = std::move(r.user) + extra;
  };

  // room for the body, leaving space for a retry note
  const auto limit = static_cast<std::size_t>(gateway.budget().input_limit());
  vars["BODY"] = "";
  build(correction_note(999));
  const auto overhead = request.estimated_input_tokens();
  vars["BODY"] = article.body;
  if (overhead + llm::estimate_tokens(article.body) + 1 > limit) {
    if (overhead + 2 >= limit) {
      throw BudgetError("summarize " + article.article_id + ": prompt leaves no room for the body");
    }
    vars["BODY"] = cut_body(article.body, (limit - overhead - 2) * 4);
    out.body_truncated = true;
  }

  auto call = [&](const std::string& extra) {
    build(extra);
    ++out.calls;
    try {
      return std::string(text::trim(gateway.complete(request)));
    } catch (const Error&) {
      rethrow_with_context("article " + article.article_id);
    }
  };

  auto acceptable = [](std::size_t n) {
    return n >= kSummaryAcceptMin && n <= kSummaryAcceptMax;
  };

  out.text = call("");
  out.sentences = text::split_sentences(out.text).size();
  if (!acceptable(out.sentences)) {
    auto second = call(correction_note(out.sentences));
    auto n = text::split_sentences(second).size();
    // keep whichever reply is closer to the accepted range
    auto distance = [](std::size_t s) -> std::size_t {
      if (s < kSummaryAcceptMin) return kSummaryAcceptMin - s;
      if (s > kSummaryAcceptMax) return s - kSummaryAcceptMax;
      return 0;
    };
    if (!second.empty() && (out.text.empty() || distance(n) <= distance(out.sentences))) {
      out.text = std::move(second);
      out.sentences = n;
    }
    out.length_warning = !acceptable(out.sentences);
  }
  if (out.text.empty()) {
    throw DecodeError("summarize " + article.article_id + ": backend returned an empty summary");
  }
  return out;
}

}  // namespace policystory::summarize
