#include "policystory/ingestion/search.hpp"

#include <algorithm>
#include <set>

#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/http.hpp"
#include "policystory/util/url.hpp"

namespace policystory::ingestion {

using nlohmann::json;

SearchPage decode_search_page(std::string_view body, const std::string& page_id) {
  auto bad = [&](const std::string& what) {
    return DecodeError("search page '" + page_id + "': " + what);
  };
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw bad(e.what());
  }
  if (!j.is_object() || !j.contains("results") || !j["results"].is_array()) {
    throw bad("missing 'results' list");
  }
  SearchPage page;
  for (const auto& r : j["results"]) {
    if (!r.is_object() || !r.contains("url") || !r["url"].is_string() ||
        !r.contains("publish_date") || !r["publish_date"].is_string()) {
      throw bad("result without string 'url' and 'publish_date'");
    }
    ArticleRef ref;
    ref.url = r["url"].get<std::string>();
    if (!is_absolute_url(ref.url)) throw bad("relative url '" + ref.url + "'");
    try {
      ref.published_at = Date::parse(r["publish_date"].get<std::string>());
    } catch (const ValidationError& e) {
      throw bad(e.what());
    }
    if (r.contains("title") && r["title"].is_string()) ref.title = r["title"].get<std::string>();
    if (r.contains("media_name") && r["media_name"].is_string()) {
      ref.source_outlet = r["media_name"].get<std::string>();
    }
    page.results.push_back(std::move(ref));
  }
  if (j.contains("next_cursor")) {
    const auto& c = j["next_cursor"];
    if (c.is_string() && !c.get<std::string>().empty()) {
      page.next_cursor = c.get<std::string>();
    } else if (!c.is_null() && !c.is_string()) {
      throw bad("'next_cursor' must be a string or null");
    }
  }
  return page;
}

HttpSearchClient::HttpSearchClient(std::string base_url, RetryPolicy retry,
                                   std::optional<std::string> api_key)
    : base_url_(std::move(base_url)), retry_(std::move(retry)), api_key_(std::move(api_key)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

SearchPage HttpSearchClient::fetch_page(const KeywordQuery& query, const DateRange& window,
                                        const std::string& cursor) {
  std::string url = base_url_ + "/search?q=" + http::url_encode(query.rendered) +
                    "&start=" + window.start.iso() + "&end=" + window.end.iso() +
                    "&cursor=" + http::url_encode(cursor);
  http::Headers headers{{"Accept", "application/json"}};
  if (api_key_) headers.emplace_back("Authorization", "Token " + *api_key_);
  http::Response last;
  for (int attempt = 0; attempt < retry_.max_attempts; ++attempt) {
    if (attempt > 0) retry_.wait_before_retry(attempt - 1);
    last = http::get(url, headers);
    if (last.status >= 200 && last.status < 300) {
      return decode_search_page(last.body, cursor.empty() ? "<first>" : cursor);
    }
    bool transient = last.status == 0 || last.status == 429 || last.status >= 500;
    if (!transient) break;
  }
  throw TransportError("search request failed with status " + std::to_string(last.status) +
                           (last.error.empty() ? "" : " (" + last.error + ")"),
                       last.status);
}

ReplaySearchClient::ReplaySearchClient(std::filesystem::path dir) : dir_(std::move(dir)) {
  auto path = dir_ / "manifest.json";
  try {
    manifest_ = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

SearchPage ReplaySearchClient::fetch_page(const KeywordQuery& query, const DateRange&,
                                          const std::string& cursor) {
  const json* entry = nullptr;
  auto searches = manifest_.find("searches");
  if (searches == manifest_.end() || !searches->is_array()) return {};
  for (const auto& s : *searches) {
    if (s.value("query", "") == query.rendered) {
      entry = &s;
      break;
    }
  }
  if (!entry) return {};
  const auto& pages = (*entry)["pages"];
  std::size_t index = 0;
  if (!cursor.empty()) {
    try {
      index = std::stoul(cursor);
    } catch (const std::exception&) {
      throw DecodeError("replay: cursor '" + cursor + "' is not a page index");
    }
  }
  if (index >= pages.size()) throw DecodeError("replay: no recorded page for cursor '" + cursor + "'");
  std::string file = pages[index].get<std::string>();
  ++pages_served_;
  return decode_search_page(read_file(dir_ / file), file);
}

std::vector<ArticleRef> search(const KeywordQuery& query, const DateRange& window,
                               SearchClient& client, const SearchOptions& options) {
  std::vector<ArticleRef> out;
  std::set<std::string> seen;
  std::string cursor;
  for (std::size_t page_no = 0; page_no < options.page_limit; ++page_no) {
    SearchPage page = client.fetch_page(query, window, cursor);
    for (auto& ref : page.results) {
      if (!window.contains(ref.published_at)) continue;
      if (!seen.insert(canonicalize_url(ref.url)).second) continue;
      out.push_back(std::move(ref));
    }
    if (!page.next_cursor) break;
    cursor = *page.next_cursor;
  }
  std::stable_sort(out.begin(), out.end(), [](const ArticleRef& a, const ArticleRef& b) {
    return a.published_at < b.published_at;
  });
  return out;
}

}  // namespace policystory::ingestion
