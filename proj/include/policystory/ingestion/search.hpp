#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "policystory/ingestion/query.hpp"
#include "policystory/util/date.hpp"
#include "policystory/util/retry.hpp"

namespace policystory::ingestion {

struct ArticleRef {
  std::string url;
  std::optional<std::string> title;
  Date published_at;
  std::optional<std::string> source_outlet;

  bool operator==(const ArticleRef&) const = default;
};

struct SearchPage {
  std::vector<ArticleRef> results;
  std::optional<std::string> next_cursor;
};

// One page of the archive's search protocol. An empty cursor asks for the
// first page.
class SearchClient {
 public:
  virtual ~SearchClient() = default;
  virtual SearchPage fetch_page(const KeywordQuery& query, const DateRange& window,
                                const std::string& cursor) = 0;
};

// Decodes {"results":[{"url","publish_date","title"[,"media_name"]}],
// "next_cursor": string|null}. DecodeError names page_id on failure.
SearchPage decode_search_page(std::string_view body, const std::string& page_id);

// Live client: GET {base}/search?q=&start=&end=&cursor=. Retries network
// failures, 429 and 5xx; other statuses fail at once with TransportError.
class HttpSearchClient final : public SearchClient {
 public:
  HttpSearchClient(std::string base_url, RetryPolicy retry, std::optional<std::string> api_key = {});
  SearchPage fetch_page(const KeywordQuery& query, const DateRange& window,
                        const std::string& cursor) override;

 private:
  std::string base_url_;
  RetryPolicy retry_;
  std::optional<std::string> api_key_;
};

// Replays recorded pages. The fixture directory holds manifest.json:
//   {"searches": [{"query": "<rendered>", "start": "...", "end": "...",
//                  "pages": ["page-001.json", ...]}]}
// The cursor is the index into "pages" (empty = 0); each page file carries
// its own next_cursor exactly as recorded. Searches are matched on the
// rendered query; window filtering happens in search().
class ReplaySearchClient final : public SearchClient {
 public:
  explicit ReplaySearchClient(std::filesystem::path dir);
  SearchPage fetch_page(const KeywordQuery& query, const DateRange& window,
                        const std::string& cursor) override;
  std::size_t pages_served() const { return pages_served_; }

 private:
  std::filesystem::path dir_;
  nlohmann::json manifest_;
  std::size_t pages_served_ = 0;
};

struct SearchOptions {
  std::size_t page_limit = 1000;
};

// Follows cursors until exhaustion or page_limit, keeps refs dated inside
// window, drops repeated canonical URLs (first sighting wins) and returns the
// survivors in publication-date order (stable).
std::vector<ArticleRef> search(const KeywordQuery& query, const DateRange& window,
                               SearchClient& client, const SearchOptions& options = {});

}  // namespace policystory::ingestion
