#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace policystory::pipeline {

enum class Stage { none, ingest, sample, classify, summarize, numeric, done };

std::string stage_name(Stage s);
Stage stage_from_name(std::string_view name);

struct Counters {
  std::int64_t search_refs = 0;
  std::int64_t sampled = 0;
  std::int64_t fetched = 0;  // = extracted + failed
  std::int64_t extracted = 0;
  std::int64_t failed = 0;
  std::int64_t classified = 0;
  std::int64_t fallback = 0;  // classified into the fallback bucket
  std::int64_t summarized = 0;
  std::int64_t stories_built = 0;
  std::int64_t numeric_stories = 0;

  bool operator==(const Counters&) const = default;
};

// Progress record kept beside the store (work_dir/manifest.json). Contains
// no wall-clock data, so identical runs write identical manifests.
struct Manifest {
  std::string run_id;
  Stage stage = Stage::none;
  Counters counters;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;           // from the most recent command
  std::map<std::string, std::string> warnings;  // keyed by record id
  std::map<std::string, std::string> numeric_done;  // story_id -> hash of the L2 it was run on

  // Stages only move forward.
  void advance(Stage s);
  void validate() const;

  static std::optional<Manifest> load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string to_json_text() const;
};

}  // namespace policystory::pipeline
