#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "policystory/corpus/types.hpp"

namespace policystory::pipeline {

enum class SourceMode { replay, http };

struct SearchConfig {
  SourceMode mode = SourceMode::replay;
  std::filesystem::path replay_dir;
  std::string base_url;
  std::size_t page_limit = 1000;
};

struct FetchConfig {
  SourceMode mode = SourceMode::replay;
  std::filesystem::path replay_dir;
  std::size_t workers = 4;
  std::size_t per_host_concurrency = 2;
  int per_host_delay_ms = 1000;
  int timeout_s = 30;
  std::string user_agent = "policystory-fetcher/1.0";
};

struct LlmConfig {
  std::string backend = "mock";  // mock | http
  std::string base_url;
  std::string model;
  std::string api_key;  // environment only, never read from the file
  std::size_t concurrency = 2;
  int max_attempts = 4;
  int base_delay_ms = 500;
  int max_delay_ms = 8000;
  int timeout_s = 120;
  int context_limit = 4096;
  double reserve_fraction = 0.15;
  std::optional<std::filesystem::path> prompts_dir;
  std::optional<std::filesystem::path> request_log;
  bool log_prompts = false;
};

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> access_log;
};

struct Config {
  std::filesystem::path source;  // the file it came from
  std::filesystem::path store;
  std::filesystem::path work_dir;  // refs, manifest, QA sheets; defaults beside the store
  std::uint64_t seed = 0;
  std::optional<std::string> clock;  // fixed generated_at for reproducible runs
  SearchConfig search;
  FetchConfig fetch;
  LlmConfig llm;
  ApiConfig api;
  std::vector<corpus::PolicyEvent> events;
  // SHA-256 of the validated document (secrets excluded), first 16 hex digits
  std::string hash;

  std::filesystem::path manifest_path() const { return work_dir / "manifest.json"; }
  const corpus::PolicyEvent* event(const std::string& event_id) const;
};

// Raised for anything wrong with the config: unreadable file, TOML syntax,
// schema violations, inconsistent events.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json toml_to_json(const std::string& toml_text);
const nlohmann::json& config_schema();

// Reads, validates against the config schema and resolves the file. Relative
// paths are taken relative to the config's directory. Environment overrides:
// POLICYSTORY_LLM_BASE_URL, POLICYSTORY_LLM_MODEL, POLICYSTORY_LLM_API_KEY,
// POLICYSTORY_LLM_CONCURRENCY, POLICYSTORY_LLM_MAX_ATTEMPTS.
Config load_config(const std::filesystem::path& path);
Config config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

}  // namespace policystory::pipeline
