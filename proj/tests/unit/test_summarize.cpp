#include <doctest.h>

#include <random>

#include "policystory/llm/mock_backend.hpp"
#include "policystory/llm/prompts.hpp"
#include "policystory/summarize/article.hpp"
#include "policystory/summarize/glossary.hpp"
#include "policystory/summarize/story.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"
#include "support.hpp"

using namespace policystory;
using namespace policystory::summarize;
using testsupport::RecordingBackend;
using testsupport::ScriptedBackend;

namespace {

const llm::PromptLibrary& prompts() {
  static const auto lib = llm::PromptLibrary::builtin();
  return lib;
}

std::string sentences(int n, const std::string& stem = "Sentence") {
  std::string s;
  for (int i = 1; i <= n; ++i) s += stem + " number " + std::to_string(i) + " states a fact. ";
  return std::string(text::trim(s));
}

corpus::Article article_with_body(const std::string& body) {
  corpus::Article a;
  a.article_id = "abc";
  a.title = "A title";
  a.published_at = Date::parse("2022-02-01");
  a.body = body;
  a.first_paragraph = body.substr(0, body.find('.') + 1);
  a.event_id = "union-budget";
  a.year = 2022;
  return a;
}

std::vector<DatedSummary> dated(int n, std::size_t sentence_count = 2) {
  std::vector<DatedSummary> out;
  for (int i = 0; i < n; ++i) {
    Date d{2021, 1 + (i * 12) / std::max(n, 1), 1 + i % 28};
    out.push_back({"id" + std::to_string(i), d,
                   "Item " + std::to_string(i) + " opens. " + sentences(static_cast<int>(sentence_count) - 1)});
  }
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.published_at < b.published_at; });
  return out;
}

const StoryContext kCtx{"Farmers' Protests", "Laws & Legal Process", 2021};

// Mock replies, except call number fail_at (1-based) which gets a 400.
class FailingAt final : public llm::ChatBackend {
 public:
  explicit FailingAt(int fail_at) : fail_at_(fail_at) {}
  std::string name() const override { return "mock"; }
  llm::BackendReply send(const llm::ChatRequest& r) override {
    if (++calls_ == fail_at_) return {400, "", "refused"};
    return {200, llm::MockBackend::respond(r), ""};
  }

 private:
  int fail_at_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("summary of a 12-sentence body is its first six sentences") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  auto s = summarize_article(article_with_body(sentences(12)), *gw, prompts());
  CHECK(s.text == text::join(std::vector<std::string>(text::split_sentences(sentences(6))), " "));
  CHECK(s.sentences == 6);
  CHECK(s.calls == 1);
  CHECK_FALSE(s.body_truncated);
  CHECK_FALSE(s.length_warning);
}

TEST_CASE("oversized body is cut and flagged") {
  auto backend = std::make_shared<RecordingBackend>();
  auto gw = testsupport::make_gateway(backend);
  auto s = summarize_article(article_with_body(sentences(900)), *gw, prompts());
  CHECK(s.body_truncated);
  CHECK_FALSE(s.text.empty());
  for (auto& r : backend->requests()) {
    CHECK(r.estimated_input_tokens() + static_cast<std::size_t>(r.max_output_tokens) <= 4096);
  }
}

TEST_CASE("empty body is a precondition error") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  CHECK_THROWS_AS(summarize_article(article_with_body("  "), *gw, prompts()), PreconditionError);
}

TEST_CASE("short summary is retried once, then accepted with a warning") {
  auto backend = std::make_shared<ScriptedBackend>(std::deque<llm::BackendReply>{
      {200, "Only one sentence.", ""}, {200, "Still short. Two now.", ""}});
  auto gw = testsupport::make_gateway(backend);
  auto s = summarize_article(article_with_body(sentences(12)), *gw, prompts());
  CHECK(s.calls == 2);
  CHECK(s.length_warning);
  CHECK(s.text == "Still short. Two now.");
  REQUIRE(backend->requests().size() == 2);
  CHECK(backend->requests()[1].user_prompt.find("1 sentences") != std::string::npos);
}

TEST_CASE("summary in range after retry has no warning") {
  auto backend = std::make_shared<ScriptedBackend>(
      std::deque<llm::BackendReply>{{200, sentences(14), ""}, {200, sentences(6), ""}});
  auto gw = testsupport::make_gateway(backend);
  auto s = summarize_article(article_with_body(sentences(20)), *gw, prompts());
  CHECK(s.calls == 2);
  CHECK_FALSE(s.length_warning);
  CHECK(s.sentences == 6);
}

TEST_CASE("45 summaries take exactly 3 story calls") {
  auto backend = std::make_shared<RecordingBackend>();
  auto gw = testsupport::make_gateway(backend);
  auto r = generate_l2(kCtx, dated(45), *gw, prompts());
  CHECK(r.calls == 3);
  CHECK(r.batch_count == 3);
  CHECK(r.batch_sizes == std::vector<std::size_t>{20, 20, 5});
  CHECK(backend->requests_for("story_first").size() == 1);
  CHECK(backend->requests_for("story_fold").size() == 2);
  CHECK(r.batch_count == corpus::expected_batch_count(45));
}

TEST_CASE("one summary: one call, story built from it") {
  auto backend = std::make_shared<RecordingBackend>();
  auto gw = testsupport::make_gateway(backend);
  auto one = dated(1);
  auto r = generate_l2(kCtx, one, *gw, prompts());
  CHECK(r.calls == 1);
  CHECK(r.batch_count == 1);
  CHECK(r.l2_text.find("Item 0 opens.") != std::string::npos);
}

TEST_CASE("fold keeps chronology across batches") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  auto items = dated(25);
  auto r = generate_l2(kCtx, items, *gw, prompts());
  REQUIRE(r.batch_count == 2);
  std::size_t last = 0;
  for (auto& s : items) {
    auto pos = r.l2_text.find(s.published_at.iso() + ": Item " + s.article_id.substr(2) + " opens.");
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= last);
    last = pos;
  }
}

TEST_CASE("summaries out of date order are refused") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  auto items = dated(3);
  std::swap(items[0], items[2]);
  CHECK_THROWS_AS(generate_l2(kCtx, items, *gw, prompts()), PreconditionError);
  CHECK_THROWS_AS(generate_l2(kCtx, {}, *gw, prompts()), PreconditionError);
}

TEST_CASE("interrupted fold resumes with the remaining calls only") {
  auto items = dated(70);  // 4 batches
  auto full_gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  auto full = generate_l2(kCtx, items, *full_gw, prompts());
  REQUIRE(full.batch_count == 4);

  for (int k = 1; k <= 4; ++k) {
    auto gw = testsupport::make_gateway(std::make_shared<FailingAt>(k));
    FoldState state;
    try {
      generate_l2(kCtx, items, *gw, prompts());
      FAIL("fold did not stop");
    } catch (const FoldInterrupted& e) {
      state = e.state();
      CHECK_THROWS_AS(std::rethrow_exception(e.cause()), PermanentError);
    }
    CHECK(state.batches_consumed == k - 1);
    auto resume_gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
    auto rest = generate_l2(kCtx, items, *resume_gw, prompts(), state);
    CHECK(rest.calls == 4 - (k - 1));
    CHECK(rest.l2_text == full.l2_text);
    CHECK(rest.state.articles_consumed == 70);
  }
}

TEST_CASE("fold budget property: ceil(n/20) batches, no request over the context") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 90);
    auto items = dated(n, 1 + rng() % 12);
    // some summaries are very long so clipping has to happen
    for (auto& s : items) {
      if (rng() % 4 == 0) s.summary += " " + sentences(30 + static_cast<int>(rng() % 40), "Extra");
    }
    auto backend = std::make_shared<RecordingBackend>();
    auto gw = testsupport::make_gateway(backend);
    auto r = generate_l2(kCtx, items, *gw, prompts());
    CHECK(r.batch_count == (n + 19) / 20);
    CHECK(r.calls == r.batch_count);
    for (auto& req : backend->requests()) {
      CHECK(req.estimated_input_tokens() + static_cast<std::size_t>(req.max_output_tokens) <= 4096);
    }
  }
}

TEST_CASE("plan_fold clips long items and keeps 20 per batch") {
  std::vector<DatedSummary> items;
  for (int i = 0; i < 40; ++i) items.push_back({"x", Date{2022, 1, 1 + i % 28}, sentences(80)});
  std::stable_sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.published_at < b.published_at; });
  auto plan = plan_fold(kCtx, items, llm::TokenBudget{}, prompts());
  CHECK(plan.batches.size() == 2);
  CHECK(plan.clipped_items == 40);
  for (auto& item : plan.items) CHECK(llm::estimate_tokens(item) <= plan.item_token_allowance);
  CHECK_THROWS_AS(plan_fold(kCtx, items, llm::TokenBudget{500, 50}, prompts()), BudgetError);
}

TEST_CASE("draft truncation keeps the newest lines") {
  std::string draft = "Opening line of the story.\n";
  for (int i = 0; i < 60; ++i) draft += "2021-03-" + std::to_string(10 + i % 18) + ": Event " + std::to_string(i) +
                                         " happened. It had consequences. More detail followed.\n";
  bool changed = false;
  auto cut = truncate_draft(draft, 300, &changed);
  CHECK(changed);
  CHECK(llm::estimate_tokens(cut) <= 300);
  CHECK(cut.find("Event 59 happened. It had consequences. More detail followed.") != std::string::npos);
  bool same = true;
  CHECK(truncate_draft("short draft", 300, &same) == "short draft");
  CHECK_FALSE(same);
}

TEST_CASE("l1 from the mock is the first three sentences and shorter than l2") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  std::string l2 = "This story follows Defense through 2023.\n\n" + sentences(10);
  auto r = generate_l1(l2, *gw, prompts());
  CHECK(text::split_sentences(r.text).size() == 3);
  CHECK(text::word_count(r.text) < text::word_count(l2));
  CHECK(r.calls == 1);
  CHECK_FALSE(r.trimmed);
}

TEST_CASE("l1 length contract holds for awkward replies") {
  std::string huge;
  for (int i = 0; i < 60; ++i) huge += "This reply sentence is deliberately long and wordy in its phrasing. ";
  std::string l2 = sentences(40);
  auto backend = std::make_shared<ScriptedBackend>(std::deque<llm::BackendReply>{
      {200, huge, ""}, {200, "Para one.\n\nPara two.\n\n" + huge, ""}});
  auto gw = testsupport::make_gateway(backend);
  auto r = generate_l1(l2, *gw, prompts());
  CHECK(r.calls == 2);
  CHECK(r.trimmed);
  CHECK(text::word_count(r.text) <= kL1MaxWords);
  CHECK(text::word_count(r.text) < text::word_count(l2));
  CHECK(l1_shape_problem(r.text).empty());

  // an L2 of ten words forces the brief under ten words
  auto gw2 = testsupport::make_gateway(std::make_shared<ScriptedBackend>(
      std::deque<llm::BackendReply>{{200, huge, ""}, {200, huge, ""}}));
  std::string tiny = "One two three four five six seven eight nine ten.";
  auto r2 = generate_l1(tiny, *gw2, prompts());
  CHECK(text::word_count(r2.text) < 10);

  CHECK_THROWS_AS(generate_l1("", *gw2, prompts()), PreconditionError);
}

TEST_CASE("l1 shape rules") {
  CHECK(l1_shape_problem("One paragraph only.").empty());
  CHECK(l1_shape_problem("Lead.\n- a\n- b").empty());
  CHECK_FALSE(l1_shape_problem("One.\n\nTwo.").empty());
  CHECK_FALSE(l1_shape_problem("Lead.\n- a\nTrailing prose.").empty());
  CHECK_FALSE(l1_shape_problem("Lead.\n- a\n- b\n- c\n- d\n- e\n- f").empty());
  CHECK_FALSE(l1_shape_problem("").empty());
}

TEST_CASE("jargon from the mock") {
  auto gw = testsupport::make_gateway(std::make_shared<RecordingBackend>());
  auto r = extract_jargon("The fiscal deficit widened as MSP payments rose.", *gw, prompts());
  bool fiscal = false, msp = false;
  for (auto& e : r.entries) {
    fiscal |= e.term == "fiscal deficit" && !e.definition.empty();
    msp |= e.term == "MSP";
  }
  CHECK(fiscal);
  CHECK(msp);
  auto none = extract_jargon("Nothing technical was said at all.", *gw, prompts());
  CHECK(none.entries.empty());
  CHECK(none.warning.empty());
}

TEST_CASE("jargon reply parsing") {
  auto r = parse_jargon("- **MSP**: Minimum support price. Set by the Centre. Third sentence.\n"
                        "fiscal deficit: The gap.\n"
                        "msp: duplicate\n"
                        "a very long term that has far too many words: x\n");
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].term == "MSP");
  CHECK(r.entries[0].definition == "Minimum support price. Set by the Centre.");
  CHECK(parse_jargon("NONE").entries.empty());
  CHECK(parse_jargon("NONE").warning.empty());
  auto junk = parse_jargon("I could not find anything useful here");
  CHECK(junk.entries.empty());
  CHECK_FALSE(junk.warning.empty());
}

TEST_CASE("glossary merge keeps one entry per term") {
  std::vector<corpus::GlossaryEntry> g;
  merge_glossary(g, {{"MSP", "Minimum support price.", {}}}, "farmers-protests/msp-economic-demands/2021");
  merge_glossary(g, {{"msp", "Another definition.", {}}}, "farmers-protests/laws-legal-process/2020");
  REQUIRE(g.size() == 1);
  CHECK(g[0].definition == "Minimum support price.");
  CHECK(g[0].story_ids == std::vector<std::string>{"farmers-protests/laws-legal-process/2020",
                                                   "farmers-protests/msp-economic-demands/2021"});
}
