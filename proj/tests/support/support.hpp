#pragma once

#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "policystory/corpus/store.hpp"
#include "policystory/llm/backend.hpp"
#include "policystory/llm/gateway.hpp"

namespace testsupport {

std::filesystem::path source_dir();
std::filesystem::path cli_path();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "ps");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

// Mock backend that keeps every request it was sent.
class RecordingBackend final : public policystory::llm::ChatBackend {
 public:
  std::string name() const override { return "mock"; }
  policystory::llm::BackendReply send(const policystory::llm::ChatRequest& request) override;
  std::vector<policystory::llm::ChatRequest> requests() const;
  std::vector<policystory::llm::ChatRequest> requests_for(const std::string& task) const;

 private:
  mutable std::mutex mutex_;
  std::vector<policystory::llm::ChatRequest> requests_;
};

// Plays back queued replies in order; once the queue is empty every request
// gets the fallback reply.
class ScriptedBackend final : public policystory::llm::ChatBackend {
 public:
  explicit ScriptedBackend(std::deque<policystory::llm::BackendReply> replies,
                           policystory::llm::BackendReply fallback = {500, "", "script exhausted"});
  std::string name() const override { return "scripted"; }
  policystory::llm::BackendReply send(const policystory::llm::ChatRequest& request) override;
  std::vector<policystory::llm::ChatRequest> requests() const;

 private:
  mutable std::mutex mutex_;
  std::deque<policystory::llm::BackendReply> replies_;
  policystory::llm::BackendReply fallback_;
  std::vector<policystory::llm::ChatRequest> requests_;
};

// Gateway with default budget and a retry policy that does not sleep.
std::unique_ptr<policystory::llm::Gateway> make_gateway(
    std::shared_ptr<policystory::llm::ChatBackend> backend,
    std::optional<std::filesystem::path> log = std::nullopt);

// Both preset events (window 2019..2024), one defense article and story per
// year 2019..2024 with a "Defense Budget" fact, and a union-budget glossary of
// {MSP, fiscal deficit}. The 2019 story carries INR 3.05 lakh crore and 2023
// INR 5.94 lakh crore.
void build_api_fixture_store(const std::filesystem::path& root);

// Writes a copy of fixtures/mini.toml into dir with the store and work dir
// under dir and replay dirs pointing at the committed fixtures.
std::filesystem::path write_mini_config(const std::filesystem::path& dir);

struct CliRun {
  int exit_code = -1;
  std::string output;  // stdout and stderr together
};
CliRun run_cli(const std::vector<std::string>& args);

std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace testsupport

#include "policystory/api/handler.hpp"

namespace testsupport {

struct CrawlHit {
  std::string path;
  std::map<std::string, std::string> query;
  policystory::api::ApiResponse response;
  std::string schema;  // file stem under schemas/api
};

// Every endpoint reachable from /api/events, each stories route under every
// level/order combination, plus a set of error requests.
std::vector<CrawlHit> crawl_api(const policystory::api::Snapshot& snapshot);

// Schema violations for one hit, empty when valid.
std::vector<std::string> validate_hit(const CrawlHit& hit);

}  // namespace testsupport
