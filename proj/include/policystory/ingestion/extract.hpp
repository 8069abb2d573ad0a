#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policystory/corpus/types.hpp"
#include "policystory/ingestion/search.hpp"

namespace policystory::ingestion {

inline constexpr std::size_t kMinBodyChars = 200;

struct ExtractedPage {
  std::string title;
  std::vector<std::string> paragraphs;
  std::vector<std::string> authors;
  std::optional<Date> published_at;
};

// Readability-style extraction: boilerplate subtrees (script, nav, footer,
// ad/share/comment containers, ...) are dropped, paragraphs are scored into
// their ancestors and the best-scoring container (plus strong siblings)
// supplies the body.
ExtractedPage extract_page(std::string_view html);

struct FetchResponse {
  int status = 0;
  std::string body;
};

// Fetches article pages. Implementations throw TransportError when the page
// cannot be retrieved.
class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual FetchResponse fetch(const std::string& url) = 0;
};

// Reads {dir}/html/{article_id}.html, keyed by the canonical URL's hash. A
// page that was never recorded answers 404.
class ReplayPageFetcher final : public PageFetcher {
 public:
  explicit ReplayPageFetcher(std::filesystem::path dir);
  FetchResponse fetch(const std::string& url) override;

 private:
  std::filesystem::path dir_;
};

struct HttpFetchOptions {
  std::size_t per_host_concurrency = 2;
  std::chrono::milliseconds per_host_delay{1000};
  std::chrono::seconds timeout{30};
  std::string user_agent = "policystory-fetcher/1.0";
};

// Live fetcher with per-host politeness: at most per_host_concurrency
// requests in flight per host and per_host_delay between request starts.
class HttpPageFetcher final : public PageFetcher {
 public:
  explicit HttpPageFetcher(HttpFetchOptions options = {});
  ~HttpPageFetcher() override;
  FetchResponse fetch(const std::string& url) override;

 private:
  struct HostGate;
  HostGate& gate_for(const std::string& host);

  HttpFetchOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<HostGate>> gates_;
};

// Builds an Article (no topic, no summary). published_at comes from page
// metadata when present, else from the search result. Throws TransportError
// for fetch failures and ExtractionError when the body is shorter than
// kMinBodyChars.
corpus::Article fetch_and_extract(const ArticleRef& ref, PageFetcher& fetcher,
                                  const std::string& event_id);

struct FetchFailure {
  std::string url;
  std::string reason;
  // no response, 429 or 5xx: worth retrying later. Everything else (404,
  // pages without article text) is final.
  bool transient = false;
};

struct FetchBatch {
  std::vector<corpus::Article> articles;  // input order
  std::vector<FetchFailure> failures;     // input order
};

// Concurrent fetch over a bounded worker pool. Every ref ends up in exactly
// one of the two lists.
FetchBatch fetch_batch(const std::vector<ArticleRef>& refs, PageFetcher& fetcher,
                       const std::string& event_id, std::size_t workers);

}  // namespace policystory::ingestion
