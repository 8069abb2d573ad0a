#pragma once

#include <exception>
#include <string>
#include <vector>

#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"
#include "policystory/util/date.hpp"
#include "policystory/util/errors.hpp"

namespace policystory::summarize {

// Running state of an L2 fold. Enough to resume after a failed batch.
struct FoldState {
  std::string draft;
  int batches_consumed = 0;
  int articles_consumed = 0;

  void validate() const;
  bool operator==(const FoldState&) const = default;
};

// Thrown when a gateway call fails mid-fold. state() is the fold as of the
// last completed batch; pass it back to generate_l2 to carry on.
class FoldInterrupted : public Error {
 public:
  FoldInterrupted(const std::string& what, FoldState state, std::exception_ptr cause)
      : Error(what), state_(std::move(state)), cause_(std::move(cause)) {}
  const FoldState& state() const { return state_; }
  // the original gateway error
  std::exception_ptr cause() const { return cause_; }

 private:
  FoldState state_;
  std::exception_ptr cause_;
};

struct StoryContext {
  std::string event_name;
  std::string topic_label;
  int year = 0;
};

struct DatedSummary {
  std::string article_id;
  Date published_at;
  std::string summary;
};

inline constexpr double kDraftBudgetFraction = 0.40;

struct L2Result {
  std::string l2_text;
  int batch_count = 0;
  int calls = 0;  // story calls made by this invocation
  std::vector<std::size_t> batch_sizes;
  std::size_t clipped_items = 0;  // summaries shortened to fit 20 per batch
  int draft_truncations = 0;
  FoldState state;
};

// Batch layout for a fold: how many items go in each prompt. Items are
// "(YYYY-MM-DD) summary" lines, clipped to a per-item allowance that leaves
// room for 20 of them next to a draft of at most 40% of the context, so the
// layout is always ceil(n / 20) batches of 20 (the last one shorter).
struct FoldPlan {
  std::vector<std::string> items;
  std::vector<std::vector<std::string>> batches;
  std::size_t item_token_allowance = 0;
  std::size_t clipped_items = 0;
  std::size_t draft_token_cap = 0;
};

FoldPlan plan_fold(const StoryContext& ctx, const std::vector<DatedSummary>& summaries,
                   const llm::TokenBudget& budget, const llm::PromptLibrary& prompts);

// Shortens a draft to at most max_tokens: the oldest lines are cut to their
// first sentence one by one, then the oldest lines are dropped. Newest
// material is kept intact for as long as possible.
std::string truncate_draft(const std::string& draft, std::size_t max_tokens, bool* changed = nullptr);

// Folds summaries (publication-date ascending) into one narrative: the first
// batch asks for a chronological story, each later batch revises the draft
// with the next batch. One gateway call per batch. resume skips the batches
// it has already consumed.
L2Result generate_l2(const StoryContext& ctx, const std::vector<DatedSummary>& summaries,
                     llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                     const FoldState& resume = {});

inline constexpr std::size_t kL1TargetWords = 150;
inline constexpr std::size_t kL1MaxWords = 200;
inline constexpr std::size_t kL1MaxBullets = 5;

struct L1Result {
  std::string text;
  int calls = 0;
  bool trimmed = false;  // shortened locally after the retry
};

// Checks the brief shape: one prose paragraph, optionally followed by up to 5
// bullet lines. Returns an empty string when fine, else the reason.
std::string l1_shape_problem(const std::string& l1);

// One paragraph, <= 200 words and strictly shorter than the L2. A reply that
// misses is retried once with a corrective note; if it still misses, whole
// sentences are dropped from the end (and surplus bullets removed) until it
// fits.
L1Result generate_l1(const std::string& l2_text, llm::Gateway& gateway,
                     const llm::PromptLibrary& prompts);

}  // namespace policystory::summarize
