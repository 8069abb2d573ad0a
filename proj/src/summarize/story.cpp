#include "policystory/summarize/story.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "policystory/llm/tokens.hpp"
#include "policystory/summarize/article.hpp"
#include "policystory/util/text.hpp"

namespace policystory::summarize {

namespace {

std::size_t joined_tokens(const std::vector<std::string>& lines) {
  return llm::estimate_tokens(text::join(lines, "\n"));
}

std::string first_sentence(const std::string& line) {
  auto s = text::split_sentences(line);
  return s.empty() ? line : s.front();
}

// Keeps whole leading sentences that fit max_chars; a first sentence that
// alone is too long is cut and marked with an ellipsis.
std::string clip_item(const std::string& item, std::size_t max_chars) {
  if (text::utf8_length(item) <= max_chars) return item;
  std::string kept;
  for (const auto& s : text::split_sentences(item)) {
    std::string next = kept.empty() ? s : kept + " " + s;
    if (text::utf8_length(next) > max_chars) break;
    kept = std::move(next);
  }
  if (!kept.empty()) return kept;
  return std::string(text::utf8_prefix(item, max_chars - 1)) + "…";
}

llm::PromptVars story_vars(const StoryContext& ctx) {
  return {{"EVENT_NAME", ctx.event_name},
          {"TOPIC_LABEL", ctx.topic_label},
          {"YEAR", std::to_string(ctx.year)}};
}

std::size_t prompt_tokens(const llm::RenderedPrompt& p) {
  return llm::estimate_tokens(p.system) + llm::estimate_tokens(p.user);
}

bool is_bullet(std::string_view line) {
  line = text::trim(line);
  if (line.empty()) return false;
  if (line[0] == '-' || line[0] == '*') return line.size() > 1 && line[1] == ' ';
  if (line.rfind("•", 0) == 0) return true;
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  return i > 0 && i + 1 < line.size() && (line[i] == '.' || line[i] == ')') && line[i + 1] == ' ';
}

struct BriefParts {
  std::vector<std::string> paragraphs;
  std::vector<std::string> bullets;
  bool prose_after_bullets = false;
};

BriefParts split_brief(const std::string& l1) {
  BriefParts parts;
  std::string current;
  for (const auto& raw : text::split_lines(l1)) {
    std::string line(text::trim(raw));
    if (is_bullet(line)) {
      if (!current.empty()) parts.paragraphs.push_back(std::move(current));
      current.clear();
      parts.bullets.push_back(line);
      continue;
    }
    if (line.empty()) {
      if (!current.empty()) parts.paragraphs.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (!parts.bullets.empty()) parts.prose_after_bullets = true;
    current = current.empty() ? line : current + " " + line;
  }
  if (!current.empty()) parts.paragraphs.push_back(std::move(current));
  return parts;
}

std::string word_prefix(const std::string& s, std::size_t words) {
  std::istringstream in(s);
  std::string out;
  std::string w;
  for (std::size_t i = 0; i < words && in >> w; ++i) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

void FoldState::validate() const {
  if (batches_consumed < 0) throw ValidationError("FoldState: batches_consumed >= 0");
  if (articles_consumed < 0) throw ValidationError("FoldState: articles_consumed >= 0");
  if (draft.empty() != (batches_consumed == 0)) {
    throw ValidationError("FoldState: draft empty iff batches_consumed = 0");
  }
}

FoldPlan plan_fold(const StoryContext& ctx, const std::vector<DatedSummary>& summaries,
                   const llm::TokenBudget& budget, const llm::PromptLibrary& prompts) {
  FoldPlan plan;
  auto vars = story_vars(ctx);
  vars["BATCH"] = "";
  vars["DRAFT"] = "";
  // +2 per substituted slot: splicing text into a template can cost one
  // token of rounding on each side
  const std::size_t overhead = std::max(prompt_tokens(prompts.render("story_first", vars)),
                                        prompt_tokens(prompts.render("story_fold", vars))) + 4;
  plan.draft_token_cap =
      static_cast<std::size_t>(kDraftBudgetFraction * static_cast<double>(budget.context_limit));
  const auto limit = static_cast<std::size_t>(budget.input_limit());
  const std::size_t reserved = overhead + plan.draft_token_cap;
  constexpr std::size_t kItems = llm::kDefaultBatchItems;
  // 20 items of <= A tokens plus 19 newlines estimate to at most 20A + 5
  if (limit < reserved + 5 + kItems * 8) {
    throw BudgetError("story prompts: context of " + std::to_string(budget.context_limit) +
                      " tokens leaves no room for a batch of 20 summaries");
  }
  plan.item_token_allowance = (limit - reserved - 5) / kItems;

  for (const auto& s : summaries) {
    std::string item = "(" + s.published_at.iso() + ") " + text::collapse_whitespace(s.summary);
    std::string clipped = clip_item(item, plan.item_token_allowance * 4);
    if (clipped != item) ++plan.clipped_items;
    plan.items.push_back(std::move(clipped));
  }
  plan.batches = llm::chunk_by_budget(plan.items, kItems, budget, reserved);
  return plan;
}

std::string truncate_draft(const std::string& draft, std::size_t max_tokens, bool* changed) {
  if (changed) *changed = false;
  if (llm::estimate_tokens(draft) <= max_tokens) return draft;
  if (changed) *changed = true;

  auto lines = text::split_lines(draft);
  // oldest lines lose detail first; the newest line is left whole
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    if (joined_tokens(lines) <= max_tokens) return text::join(lines, "\n");
    if (!text::trim(lines[i]).empty()) lines[i] = first_sentence(std::string(text::trim(lines[i])));
  }
  while (lines.size() > 1 && joined_tokens(lines) > max_tokens) lines.erase(lines.begin());
  // drop the blank separator left at the top, if any
  while (lines.size() > 1 && text::trim(lines.front()).empty()) lines.erase(lines.begin());
  std::string out = text::join(lines, "\n");
  if (llm::estimate_tokens(out) > max_tokens) out = std::string(text::utf8_prefix(out, max_tokens * 4));
  return out;
}

L2Result generate_l2(const StoryContext& ctx, const std::vector<DatedSummary>& summaries,
                     llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                     const FoldState& resume) {
  if (summaries.empty()) throw PreconditionError("generate_l2: no summaries");
  for (std::size_t i = 1; i < summaries.size(); ++i) {
    if (summaries[i].published_at < summaries[i - 1].published_at) {
      throw PreconditionError("generate_l2: summaries not in publication-date order");
    }
  }
  resume.validate();

  const auto& budget = gateway.budget();
  auto plan = plan_fold(ctx, summaries, budget, prompts);
  if (static_cast<std::size_t>(resume.batches_consumed) > plan.batches.size()) {
    throw ValidationError("generate_l2: resume state is past the last batch");
  }

  L2Result out;
  out.batch_count = static_cast<int>(plan.batches.size());
  out.clipped_items = plan.clipped_items;
  for (const auto& b : plan.batches) out.batch_sizes.push_back(b.size());
  out.state = resume;

  auto vars = story_vars(ctx);
  for (auto b = static_cast<std::size_t>(resume.batches_consumed); b < plan.batches.size(); ++b) {
    vars["BATCH"] = text::join(plan.batches[b], "\n");
    llm::RenderedPrompt prompt;
    if (b == 0) {
      prompt = prompts.render("story_first", vars);
    } else {
      bool cut = false;
      vars["DRAFT"] = truncate_draft(out.state.draft, plan.draft_token_cap, &cut);
      if (cut) ++out.draft_truncations;
      prompt = prompts.render("story_fold", vars);
    }

    llm::ChatRequest request;
    request.system_prompt = std::move(prompt.system);
    request.user_prompt = std::move(prompt.user);
    request.max_output_tokens = budget.reserved_output;
    request.temperature = kNarrativeTemperature;
    request.backend_tag = "story:" + ctx.topic_label + ":" + std::to_string(ctx.year) +
                          ":batch" + std::to_string(b + 1);

    std::string reply;
    try {
      ++out.calls;
      reply = std::string(text::trim(gateway.complete(request)));
      if (reply.empty()) throw DecodeError("backend returned an empty story");
    } catch (const Error& e) {
      throw FoldInterrupted("story fold stopped at batch " + std::to_string(b + 1) + " of " +
                                std::to_string(plan.batches.size()) + ": " + e.what(),
                            out.state, std::current_exception());
    }
    out.state.draft = std::move(reply);
    out.state.batches_consumed += 1;
    out.state.articles_consumed += static_cast<int>(plan.batches[b].size());
  }
  out.l2_text = out.state.draft;
  return out;
}

std::string l1_shape_problem(const std::string& l1) {
  auto parts = split_brief(l1);
  if (parts.paragraphs.empty()) return "no prose paragraph";
  if (parts.paragraphs.size() > 1) return std::to_string(parts.paragraphs.size()) + " paragraphs";
  if (parts.prose_after_bullets) return "prose after the bullet list";
  if (parts.bullets.size() > kL1MaxBullets) {
    return std::to_string(parts.bullets.size()) + " bullet points";
  }
  return {};
}

L1Result generate_l1(const std::string& l2_text, llm::Gateway& gateway,
                     const llm::PromptLibrary& prompts) {
  if (text::trim(l2_text).empty()) throw PreconditionError("generate_l1: L2 text is empty");
  const std::size_t l2_words = text::word_count(l2_text);
  if (l2_words < 2) throw ValidationError("generate_l1: L2 too short to condense");
  const std::size_t word_limit = std::min(kL1MaxWords, l2_words - 1);

  const auto& budget = gateway.budget();
  constexpr int kMaxOutput = 400;
  std::string story = l2_text;
  llm::ChatRequest request;
  request.max_output_tokens = kMaxOutput;
  request.temperature = kNarrativeTemperature;
  request.backend_tag = "brief";
  auto build = [&](const std::string& extra) {
    auto p = prompts.render("story_brief", {{"STORY", story}});
    request.system_prompt = std::move(p.system);
    request.user_prompt = std::move(p.user) + extra;
  };
  const std::string note_probe =
      "\n\nYour previous brief had 9999 words in 99 paragraphs. Rewrite it as one paragraph of "
      "at most 150 words.";
  build(note_probe);
  // a story too long for the prompt is briefed from its opening
  const auto limit = static_cast<std::size_t>(budget.input_limit());
  if (request.estimated_input_tokens() > limit) {
    const auto room = limit - (request.estimated_input_tokens() - llm::estimate_tokens(story)) - 2;
    auto lines = text::split_lines(l2_text);
    story.clear();
    for (const auto& line : lines) {
      std::string next = story.empty() ? line : story + "\n" + line;
      if (llm::estimate_tokens(next) > room) break;
      story = std::move(next);
    }
    if (story.empty()) story = std::string(text::utf8_prefix(l2_text, room * 4));
  }

  auto acceptable = [&](const std::string& l1) {
    return !l1.empty() && l1_shape_problem(l1).empty() && text::word_count(l1) <= word_limit;
  };

  L1Result out;
  auto call = [&](const std::string& extra) {
    build(extra);
    ++out.calls;
    return std::string(text::trim(gateway.complete(request)));
  };

  out.text = call("");
  if (acceptable(out.text)) return out;

  const auto parts = split_brief(out.text);
  std::string note = "\n\nYour previous brief had " + std::to_string(text::word_count(out.text)) +
                     " words in " + std::to_string(parts.paragraphs.size()) +
                     " paragraphs. Rewrite it as one paragraph of at most 150 words.";
  auto second = call(note);
  if (!second.empty()) out.text = std::move(second);
  if (acceptable(out.text)) return out;

  // still off: fold paragraphs together, then shed bullets, trailing
  // sentences and finally words until it fits
  out.trimmed = true;
  auto p = split_brief(out.text);
  std::string prose = text::join(p.paragraphs, " ");
  if (p.bullets.size() > kL1MaxBullets) p.bullets.resize(kL1MaxBullets);
  auto assemble = [&] {
    std::string s = prose;
    for (const auto& b : p.bullets) s += "\n" + b;
    return s;
  };
  while (!p.bullets.empty() && text::word_count(assemble()) > word_limit) p.bullets.pop_back();
  auto sentences = text::split_sentences(prose);
  while (sentences.size() > 1 && text::word_count(text::join(sentences, " ")) > word_limit) {
    sentences.pop_back();
  }
  prose = text::join(sentences, " ");
  if (prose.empty()) prose = word_prefix(l2_text, word_limit);
  if (text::word_count(prose) > word_limit) prose = word_prefix(prose, word_limit);
  out.text = assemble();
  return out;
}

}  // namespace policystory::summarize
