#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "policystory/corpus/store.hpp"
#include "policystory/ingestion/search.hpp"
#include "policystory/llm/gateway.hpp"
#include "policystory/llm/prompts.hpp"
#include "policystory/pipeline/config.hpp"
#include "policystory/pipeline/manifest.hpp"

namespace policystory::pipeline {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitConfig = 2;

struct RunOptions {
  bool dry_run = false;
  std::optional<std::uint64_t> seed;  // overrides run.seed
  // Re-attempt pages that previously failed for good (404, no article text).
  bool retry_failed = false;
  std::ostream* out = nullptr;  // progress and dry-run plans; nullptr = silent
  // Test hook: used instead of the configured backend.
  std::shared_ptr<llm::ChatBackend> backend;
};

struct StageResult {
  int exit_code = kExitOk;
  std::vector<std::string> failures;
};

// Runs the stages against the configured store. Each stage skips work that
// is already recorded (by article or story id), so re-running a finished
// command makes no fetches and no model calls. A stage whose inputs are not
// ready throws PreconditionError ("stage precondition: classify incomplete").
class Pipeline {
 public:
  Pipeline(Config config, RunOptions options);

  StageResult ingest();
  StageResult sample();
  StageResult classify();
  StageResult summarize();
  StageResult numeric();
  // All five in order, stopping at the first stage that does not succeed.
  StageResult all();

  const Manifest& manifest() const { return manifest_; }
  const Config& config() const { return config_; }
  corpus::Store& store() { return store_; }
  // Model calls made by this Pipeline object so far.
  std::size_t gateway_calls() const;
  std::uint64_t seed() const { return seed_; }
  std::string generator() const;

  // Per-(event, year) sampling seed, derived from the run seed.
  static std::uint64_t derive_seed(std::uint64_t seed, const std::string& scope);

 private:
  llm::Gateway& gateway();
  const llm::PromptLibrary& prompts();
  std::unique_ptr<ingestion::SearchClient> make_search_client() const;
  void require_stage(Stage needed, const std::string& what) const;
  void refresh_counters();
  StageResult finish(Stage stage, StageResult result);
  std::string now() const;
  void say(const std::string& line) const;

  std::filesystem::path refs_path(const std::string& event_id) const;
  std::filesystem::path failed_path(const std::string& event_id) const;
  std::filesystem::path fold_path(const std::string& story_id) const;

  Config config_;
  RunOptions options_;
  std::uint64_t seed_;
  corpus::Store store_;
  Manifest manifest_;
  std::unique_ptr<llm::Gateway> gateway_;
  std::optional<llm::PromptLibrary> prompts_;
};

}  // namespace policystory::pipeline
