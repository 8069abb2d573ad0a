#include "policystory/ingestion/extract.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <regex>
#include <thread>
#include <unordered_map>

#include "policystory/ingestion/html.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/http.hpp"
#include "policystory/util/text.hpp"
#include "policystory/util/url.hpp"

namespace policystory::ingestion {
namespace {

using html::Node;

constexpr std::array<std::string_view, 17> kBoilerplateTags = {
    "script", "style",  "noscript", "nav",    "header", "footer",   "aside",  "form",  "iframe",
    "svg",    "button", "select",   "template", "figcaption", "menu", "object", "canvas"};

const std::regex& negative_hint() {
  static const std::regex re(
      R"((^|[-_ ])(ad|ads|advert|advertisement|banner|sponsor|sponsored|promo|nav|navbar|menu|)"
      R"(footer|sidebar|share|sharing|social|comment|comments|related|recommended|subscribe|)"
      R"(newsletter|cookie|popup|modal|breadcrumb|breadcrumbs|widget|outbrain|taboola|paywall|)"
      R"(masthead|tags|trending)([-_ ]|$))",
      std::regex::icase);
  return re;
}

const std::regex& positive_hint() {
  static const std::regex re(R"((^|[-_ ])(article|content|story|body|main|post|entry|text)([-_ ]|$))",
                             std::regex::icase);
  return re;
}

bool is_boilerplate(const Node& n) {
  if (std::find(kBoilerplateTags.begin(), kBoilerplateTags.end(), n.tag) != kBoilerplateTags.end()) {
    return true;
  }
  if (n.attr("hidden").size() || n.attr("aria-hidden") == "true") return true;
  std::string hints = n.attr("class") + " " + n.attr("id") + " " + n.attr("role");
  if (hints.size() <= 2) return false;
  if (n.attr("role") == "navigation" || n.attr("role") == "complementary") return true;
  return std::regex_search(hints, negative_hint()) && !std::regex_search(hints, positive_hint());
}

struct Walk {
  std::vector<const Node*> paragraphs;  // document order, boilerplate excluded
  std::vector<const Node*> meta;
  const Node* title = nullptr;
  const Node* first_h1 = nullptr;
  std::vector<const Node*> times;
  std::vector<const Node*> author_links;
};

void walk(const Node& n, Walk& w, bool in_boilerplate) {
  if (n.is_text()) return;
  if (n.tag == "meta") w.meta.push_back(&n);
  if (n.tag == "title" && !w.title) w.title = &n;
  bool skip = in_boilerplate || (n.tag != "#document" && n.tag != "html" && n.tag != "body" &&
                                 is_boilerplate(n));
  if (!skip) {
    if (n.tag == "p") w.paragraphs.push_back(&n);
    if (n.tag == "h1" && !w.first_h1) w.first_h1 = &n;
    if (n.tag == "time") w.times.push_back(&n);
    if ((n.tag == "a" || n.tag == "span") && (n.attr("rel") == "author" || n.attr("itemprop") == "author")) {
      w.author_links.push_back(&n);
    }
  }
  for (const auto& c : n.children) walk(*c, w, skip);
}

std::string meta_content(const Walk& w, std::initializer_list<std::string_view> names) {
  for (auto name : names) {
    for (const Node* m : w.meta) {
      std::string key = text::to_lower(m->attr("property").empty()
                                           ? (m->attr("name").empty() ? m->attr("itemprop")
                                                                      : m->attr("name"))
                                           : m->attr("property"));
      if (key == name) {
        std::string v{text::trim(m->attr("content"))};
        if (!v.empty()) return v;
      }
    }
  }
  return {};
}

std::optional<Date> try_date(std::string_view s) {
  s = text::trim(s);
  try {
    return Date::parse(s);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

// Paragraph scoring in the readability tradition: each paragraph contributes
// to its parent fully and to its grandparent by half.
std::vector<std::string> select_body(const std::vector<const Node*>& paragraphs) {
  std::unordered_map<const Node*, double> score;
  std::vector<const Node*> order;
  std::unordered_map<const Node*, std::string> text_of;
  for (const Node* p : paragraphs) {
    std::string t = p->inner_text();
    text_of[p] = t;
    if (t.size() < 25) continue;
    double s = 1.0 + static_cast<double>(std::count(t.begin(), t.end(), ',')) +
               std::min(static_cast<double>(t.size()) / 100.0, 3.0);
    const Node* parent = p->parent;
    if (!parent) continue;
    if (!score.count(parent)) order.push_back(parent);
    score[parent] += s;
    if (const Node* grand = parent->parent) {
      if (!score.count(grand)) order.push_back(grand);
      score[grand] += s / 2.0;
    }
  }

  auto is_inside = [](const Node* n, const Node* container) {
    for (const Node* c = n; c; c = c->parent) {
      if (c == container) return true;
    }
    return false;
  };

  std::vector<const Node*> containers;
  if (!order.empty()) {
    const Node* best = *std::max_element(order.begin(), order.end(), [&](auto a, auto b) {
      return score[a] < score[b];
    });
    containers.push_back(best);
    if (const Node* parent = best->parent) {
      double threshold = std::max(10.0, score[best] * 0.2);
      for (const auto& sib : parent->children) {
        const Node* s = sib.get();
        if (s != best && score.count(s) && score[s] >= threshold) containers.push_back(s);
      }
    }
  }

  std::vector<std::string> out;
  for (const Node* p : paragraphs) {
    bool keep = containers.empty() ||
                std::any_of(containers.begin(), containers.end(),
                            [&](const Node* c) { return is_inside(p, c); });
    if (keep && !text_of[p].empty()) out.push_back(text_of[p]);
  }
  return out;
}

}  // namespace

ExtractedPage extract_page(std::string_view html_text) {
  auto doc = html::parse(html_text);
  Walk w;
  walk(*doc, w, false);

  ExtractedPage page;
  page.title = meta_content(w, {"og:title", "twitter:title"});
  if (page.title.empty() && w.title) page.title = w.title->inner_text();
  if (page.title.empty() && w.first_h1) page.title = w.first_h1->inner_text();

  page.paragraphs = select_body(w.paragraphs);

  for (auto key : {"article:published_time", "og:published_time", "datepublished", "pubdate",
                   "publishdate", "date", "dc.date", "dc.date.issued"}) {
    if (auto d = try_date(meta_content(w, {key}))) {
      page.published_at = d;
      break;
    }
  }
  if (!page.published_at) {
    for (const Node* t : w.times) {
      if (auto d = try_date(t->attr("datetime"))) {
        page.published_at = d;
        break;
      }
    }
  }

  auto add_author = [&](std::string_view name) {
    std::string n = text::collapse_whitespace(name);
    if (n.rfind("By ", 0) == 0 || n.rfind("by ", 0) == 0) n = n.substr(3);
    if (n.empty() || is_absolute_url(n)) return;
    if (std::find(page.authors.begin(), page.authors.end(), n) == page.authors.end()) {
      page.authors.push_back(n);
    }
  };
  for (const Node* m : w.meta) {
    std::string key = text::to_lower(m->attr("name").empty() ? m->attr("property") : m->attr("name"));
    if (key != "author" && key != "article:author") continue;
    std::string_view content = m->attr("content");
    std::string all(content);
    std::size_t start = 0;
    while (start <= all.size()) {
      auto comma = all.find(',', start);
      if (comma == std::string::npos) comma = all.size();
      std::string part{text::trim(std::string_view(all).substr(start, comma - start))};
      // "A and B" bylines
      auto and_at = part.find(" and ");
      if (and_at != std::string::npos) {
        add_author(part.substr(0, and_at));
        add_author(part.substr(and_at + 5));
      } else {
        add_author(part);
      }
      start = comma + 1;
    }
  }
  for (const Node* a : w.author_links) add_author(a->inner_text());
  return page;
}

ReplayPageFetcher::ReplayPageFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {}

FetchResponse ReplayPageFetcher::fetch(const std::string& url) {
  auto path = dir_ / "html" / (article_id_for_url(url) + ".html");
  std::error_code ec;
  // a page that was never recorded behaves like a dead link
  if (!std::filesystem::exists(path, ec)) return {404, ""};
  return {200, read_file(path)};
}

struct HttpPageFetcher::HostGate {
  std::mutex mutex;
  std::condition_variable cv;
  std::size_t in_flight = 0;
  std::chrono::steady_clock::time_point next_start{};
};

HttpPageFetcher::HttpPageFetcher(HttpFetchOptions options) : options_(std::move(options)) {
  if (options_.per_host_concurrency == 0) options_.per_host_concurrency = 1;
}

HttpPageFetcher::~HttpPageFetcher() = default;

HttpPageFetcher::HostGate& HttpPageFetcher::gate_for(const std::string& host) {
  std::lock_guard lock(mutex_);
  auto& slot = gates_[host];
  if (!slot) slot = std::make_unique<HostGate>();
  return *slot;
}

FetchResponse HttpPageFetcher::fetch(const std::string& url) {
  auto parts = split_url(url);
  if (!parts) throw TransportError("not an absolute URL: " + url, 0);
  HostGate& gate = gate_for(text::to_lower(parts->host));
  {
    std::unique_lock lock(gate.mutex);
    gate.cv.wait(lock, [&] { return gate.in_flight < options_.per_host_concurrency; });
    ++gate.in_flight;
    auto now = std::chrono::steady_clock::now();
    auto start = std::max(now, gate.next_start);
    gate.next_start = start + options_.per_host_delay;
    lock.unlock();
    std::this_thread::sleep_until(start);
  }
  http::Response r = http::get(url, {{"User-Agent", options_.user_agent}}, options_.timeout);
  {
    std::lock_guard lock(gate.mutex);
    --gate.in_flight;
  }
  gate.cv.notify_one();
  if (r.status == 0) throw TransportError("unreachable: " + url + " (" + r.error + ")", 0);
  if (r.status < 200 || r.status >= 300) {
    throw TransportError("HTTP " + std::to_string(r.status) + " for " + url, r.status);
  }
  return {r.status, std::move(r.body)};
}

corpus::Article fetch_and_extract(const ArticleRef& ref, PageFetcher& fetcher,
                                  const std::string& event_id) {
  if (!is_absolute_url(ref.url)) throw ValidationError("fetch_and_extract: url absolute");
  FetchResponse response = fetcher.fetch(ref.url);
  if (response.status < 200 || response.status >= 300) {
    throw TransportError("HTTP " + std::to_string(response.status) + " for " + ref.url,
                         response.status);
  }
  ExtractedPage page = extract_page(response.body);
  std::string body = text::join(page.paragraphs, "\n\n");
  if (text::utf8_length(body) < kMinBodyChars) {
    throw ExtractionError("extraction failed for " + ref.url + ": body has " +
                          std::to_string(text::utf8_length(body)) + " characters, need " +
                          std::to_string(kMinBodyChars));
  }
  corpus::Article a;
  a.url = ref.url;
  a.article_id = article_id_for_url(ref.url);
  a.title = !page.title.empty() ? page.title : ref.title.value_or("");
  a.published_at = page.published_at.value_or(ref.published_at);
  a.authors = std::move(page.authors);
  a.first_paragraph = page.paragraphs.front();
  a.body = std::move(body);
  a.event_id = event_id;
  a.year = a.published_at.year;
  return a;
}

FetchBatch fetch_batch(const std::vector<ArticleRef>& refs, PageFetcher& fetcher,
                       const std::string& event_id, std::size_t workers) {
  std::vector<std::optional<corpus::Article>> ok(refs.size());
  std::vector<std::optional<FetchFailure>> failed(refs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < refs.size(); i = next++) {
      try {
        ok[i] = fetch_and_extract(refs[i], fetcher, event_id);
      } catch (const TransportError& e) {
        const int s = e.status();
        failed[i] = FetchFailure{refs[i].url, e.what(), s == 0 || s == 429 || s >= 500};
      } catch (const std::exception& e) {
        failed[i] = FetchFailure{refs[i].url, e.what(), false};
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(refs.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
  }
  FetchBatch batch;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (ok[i]) {
      batch.articles.push_back(std::move(*ok[i]));
    } else {
      batch.failures.push_back(failed[i].value_or(FetchFailure{refs[i].url, "unknown failure", false}));
    }
  }
  return batch;
}

}  // namespace policystory::ingestion
