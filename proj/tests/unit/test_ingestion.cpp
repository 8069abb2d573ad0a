#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "policystory/classify/presets.hpp"
#include "policystory/ingestion/extract.hpp"
#include "policystory/ingestion/query.hpp"
#include "policystory/ingestion/sampling.hpp"
#include "policystory/ingestion/search.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/url.hpp"
#include "support.hpp"

using namespace policystory;
using namespace policystory::ingestion;
using nlohmann::json;
using testsupport::TempDir;

namespace {

const char* kFarmersQuery =
    R"("farmers" AND ("protest" OR "agitation" OR "farm laws" OR "MSP" OR "march to Delhi"))";
const char* kBudgetQuery =
    R"("budget" AND ("finance minister" OR "union budget" OR "fiscal policy" OR "tax reforms" OR "Nirmala" OR "budget speech" OR "budget allocation" OR "fiscal deficit"))";

ArticleRef ref_on(const Date& d, int n) {
  return {"https://example.in/" + d.iso() + "/" + std::to_string(n), std::nullopt, d, std::nullopt};
}

std::vector<ArticleRef> uniform_year(int year, int per_month) {
  std::vector<ArticleRef> out;
  for (int m = 1; m <= 12; ++m) {
    for (int i = 0; i < per_month; ++i) out.push_back(ref_on(Date{year, m, 1 + i % 28}, i));
  }
  return out;
}

}  // namespace

TEST_CASE("preset queries render exactly") {
  CHECK(build_query(*classify::preset_event("farmers-protests")).rendered == kFarmersQuery);
  CHECK(build_query(*classify::preset_event("union-budget")).rendered == kBudgetQuery);
}

TEST_CASE("query parse is the inverse of render") {
  for (const char* q : {kFarmersQuery, kBudgetQuery}) {
    auto structure = parse_query(q);
    CHECK(build_query(structure).rendered == q);
  }
  corpus::KeywordStructure one{{"x"}, {}};
  CHECK(build_query(one).rendered == "\"x\"");
  CHECK(parse_query("\"x\"") == one);
  corpus::KeywordStructure two{{"a", "b c"}, {{"d"}, {"e", "f"}}};
  CHECK(parse_query(build_query(two).rendered) == two);
  CHECK_THROWS_AS(build_query(corpus::KeywordStructure{}), ValidationError);
  CHECK_THROWS_AS(parse_query("\"a\" AND ("), ParseError);
}

TEST_CASE("month quotas round robin") {
  auto q = month_quotas(2000);
  for (int m = 0; m < 8; ++m) CHECK(q[m] == 167);
  for (int m = 8; m < 12; ++m) CHECK(q[m] == 166);
  for (int cap : {1, 11, 12, 13, 150, 2000, 2011}) {
    auto qq = month_quotas(cap);
    int sum = 0;
    for (int v : qq) sum += v;
    CHECK(sum == cap);
    CHECK(*std::max_element(qq.begin(), qq.end()) - *std::min_element(qq.begin(), qq.end()) <= 1);
  }
}

TEST_CASE("24000 uniform refs with cap 2000") {
  auto refs = uniform_year(2021, 2000);
  auto r = stratified_sample(refs, 2021, 2000, 7);
  std::map<int, int> histogram;
  for (int c : r.report.month_counts) ++histogram[c];
  CHECK(histogram == std::map<int, int>{{166, 4}, {167, 8}});
  CHECK(r.selected.size() == 2000);
  CHECK(r.report.achieved_total == 2000);
  CHECK(r.report.shortfall_months.empty());
}

TEST_CASE("sparse year keeps everything and reports shortfall") {
  std::vector<ArticleRef> refs;
  int supply[12] = {30, 20, 5, 0, 10, 10, 15, 20, 10, 10, 10, 10};
  for (int m = 1; m <= 12; ++m) {
    for (int i = 0; i < supply[m - 1]; ++i) refs.push_back(ref_on(Date{2019, m, 1 + i % 28}, i));
  }
  REQUIRE(refs.size() == 150);
  auto r = stratified_sample(refs, 2019, 2000, 7);
  CHECK(r.selected.size() == 150);
  CHECK(r.report.shortfall_months == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
}

TEST_CASE("cap 12 with one ref per month") {
  auto r = stratified_sample(uniform_year(2022, 1), 2022, 12, 1);
  for (int c : r.report.month_counts) CHECK(c == 1);
}

TEST_CASE("same seed, same selection") {
  auto refs = uniform_year(2020, 40);
  auto a = stratified_sample(refs, 2020, 100, 42);
  auto b = stratified_sample(refs, 2020, 100, 42);
  auto c = stratified_sample(refs, 2020, 100, 42);
  CHECK(a.selected == b.selected);
  CHECK(b.selected == c.selected);
  auto d = stratified_sample(refs, 2020, 100, 43);
  CHECK(d.selected != a.selected);
}

TEST_CASE("sampling properties over random supplies") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ArticleRef> refs;
    std::array<int, 12> supply{};
    for (int m = 1; m <= 12; ++m) {
      supply[m - 1] = static_cast<int>(rng() % 30);
      for (int i = 0; i < supply[m - 1]; ++i) refs.push_back(ref_on(Date{2023, m, 1 + i % 28}, i));
    }
    int cap = 1 + static_cast<int>(rng() % 200);
    auto r = stratified_sample(refs, 2023, cap, rng());
    int total = static_cast<int>(refs.size());
    REQUIRE(static_cast<int>(r.selected.size()) == std::min(cap, total));
    std::set<std::string> urls;
    for (auto& s : r.selected) urls.insert(s.url);
    CHECK(urls.size() == r.selected.size());
    auto quota = month_quotas(cap);
    for (int m = 0; m < 12; ++m) {
      CHECK(r.report.month_counts[m] <= supply[m]);
      // a month below its supply never gets less than its quota
      if (supply[m] >= quota[m]) CHECK(r.report.month_counts[m] >= quota[m]);
      bool short_month = std::find(r.report.shortfall_months.begin(), r.report.shortfall_months.end(),
                                   m + 1) != r.report.shortfall_months.end();
      CHECK(short_month == (supply[m] < quota[m]));
    }
  }
}

TEST_CASE("sampling rejects bad input") {
  auto refs = uniform_year(2021, 1);
  CHECK_THROWS_AS(stratified_sample(refs, 2021, 0, 1), ValidationError);
  CHECK_THROWS_AS(stratified_sample(refs, 2022, 10, 1), ValidationError);
}

namespace {

// Three pages of ten refs, dates shuffled across pages, with optional repeats.
std::filesystem::path write_replay(const std::filesystem::path& dir, const std::string& query,
                                   bool with_duplicates) {
  std::filesystem::create_directories(dir);
  json pages = json::array();
  int n = 0;
  for (int p = 0; p < 3; ++p) {
    json results = json::array();
    for (int i = 0; i < 10; ++i, ++n) {
      int day = 1 + (n * 7) % 28;
      std::string url = "https://example.in/story/" + std::to_string(n);
      if (with_duplicates && (n == 12 || n == 25)) url = "https://EXAMPLE.in/story/" + std::to_string(n - 10) + "/";
      results.push_back({{"url", url},
                         {"publish_date", Date{2021, 1 + n % 12, day}.iso()},
                         {"title", "T" + std::to_string(n)}});
    }
    json page = {{"results", results}, {"next_cursor", p < 2 ? json(std::to_string(p + 1)) : json(nullptr)}};
    write_file_atomic(dir / ("page-" + std::to_string(p) + ".json"), page.dump());
    pages.push_back("page-" + std::to_string(p) + ".json");
  }
  json manifest = {{"searches", json::array({{{"query", query}, {"pages", pages}}})}};
  write_file_atomic(dir / "manifest.json", manifest.dump());
  return dir;
}

}  // namespace

TEST_CASE("replay search follows cursors and orders by date") {
  TempDir tmp;
  auto q = build_query(*classify::preset_event("farmers-protests"));
  ReplaySearchClient client(write_replay(tmp / "s", q.rendered, false));
  DateRange year{Date::parse("2021-01-01"), Date::parse("2021-12-31")};
  auto refs = search(q, year, client);
  CHECK(refs.size() == 30);
  CHECK(client.pages_served() == 3);
  CHECK(std::is_sorted(refs.begin(), refs.end(),
                       [](auto& a, auto& b) { return a.published_at < b.published_at; }));
}

TEST_CASE("replay search drops repeated canonical urls") {
  TempDir tmp;
  auto q = build_query(*classify::preset_event("farmers-protests"));
  ReplaySearchClient client(write_replay(tmp / "s", q.rendered, true));
  auto refs = search(q, {Date::parse("2021-01-01"), Date::parse("2021-12-31")}, client);
  std::set<std::string> canonical;
  for (auto& r : refs) canonical.insert(canonicalize_url(r.url));
  CHECK(refs.size() == 28);
  CHECK(canonical.size() == 28);
}

TEST_CASE("window outside every fixture date gives nothing") {
  TempDir tmp;
  auto q = build_query(*classify::preset_event("farmers-protests"));
  ReplaySearchClient client(write_replay(tmp / "s", q.rendered, false));
  CHECK(search(q, {Date::parse("2010-01-01"), Date::parse("2010-12-31")}, client).empty());
}

TEST_CASE("malformed page names its id") {
  try {
    decode_search_page("{\"results\": 3}", "page-9.json");
    FAIL("decoded a bad page");
  } catch (const DecodeError& e) {
    CHECK(std::string(e.what()).find("page-9.json") != std::string::npos);
  }
}

TEST_CASE("minimal page extraction") {
  auto page = extract_page(
      "<html><head><title>T</title></head><body>"
      "<p>The first paragraph of this article is long enough to count as text.</p>"
      "<p>The second paragraph also carries enough words to be scored by the extractor.</p>"
      "</body></html>");
  CHECK(page.title == "T");
  REQUIRE(page.paragraphs.size() == 2);
  CHECK(page.paragraphs[0].rfind("The first paragraph", 0) == 0);
}

TEST_CASE("boilerplate is stripped and entities decoded") {
  auto page = extract_page(
      "<html><head><meta property=\"og:title\" content=\"Tax &amp; spend\">"
      "<meta property=\"article:published_time\" content=\"2023-02-01T10:00:00+05:30\">"
      "<meta name=\"author\" content=\"K. Rao\"></head><body>"
      "<nav><p>Home | Economy | Markets | Politics | Opinion | Video</p></nav>"
      "<article><p>The allocation rose to &#8377;5.94 lakh crore this year, officials said.</p>"
      "<p>Officials said the money would go to pay, pensions and new equipment for troops.</p></article>"
      "<footer><p>Copyright notice and legal terms for the whole site go here.</p></footer>"
      "</body></html>");
  CHECK(page.title == "Tax & spend");
  REQUIRE(page.paragraphs.size() == 2);
  CHECK(page.paragraphs[0] == "The allocation rose to ₹5.94 lakh crore this year, officials said.");
  REQUIRE(page.published_at.has_value());
  CHECK(page.published_at->iso() == "2023-02-01");
  CHECK(page.authors == std::vector<std::string>{"K. Rao"});
}

namespace {

class MapFetcher final : public PageFetcher {
 public:
  std::map<std::string, FetchResponse> pages;
  FetchResponse fetch(const std::string& url) override {
    auto it = pages.find(url);
    if (it == pages.end()) throw TransportError("unreachable " + url, 0);
    return it->second;
  }
};

std::string good_page(int n) {
  std::string p = "<p>Paragraph of article " + std::to_string(n) +
                  " that is comfortably longer than the minimum length for scoring.</p>";
  return "<html><head><title>Article " + std::to_string(n) + "</title></head><body><article>" + p + p +
         p + p + "</article></body></html>";
}

}  // namespace

TEST_CASE("paywall stub is an extraction failure") {
  MapFetcher f;
  f.pages["https://example.in/paywall"] = {200,
      "<html><body><article><p>Life in the camps has settled into a quiet routine by now.</p>"
      "</article></body></html>"};
  ArticleRef ref{"https://example.in/paywall", std::nullopt, Date::parse("2021-01-08"), std::nullopt};
  CHECK_THROWS_AS(fetch_and_extract(ref, f, "farmers-protests"), ExtractionError);
}

TEST_CASE("fetch batch: 10 urls with 3 stubs") {
  MapFetcher f;
  std::vector<ArticleRef> refs;
  for (int i = 0; i < 10; ++i) {
    std::string url = "https://example.in/a/" + std::to_string(i);
    refs.push_back({url, std::nullopt, Date{2021, 3, 1 + i}, std::nullopt});
    if (i == 2) continue;  // unreachable
    if (i == 5) f.pages[url] = {404, ""};
    else if (i == 8) f.pages[url] = {200, "<html><body><nav>menu</nav></body></html>"};
    else f.pages[url] = {200, good_page(i)};
  }
  auto batch = fetch_batch(refs, f, "farmers-protests", 4);
  CHECK(batch.articles.size() == 7);
  REQUIRE(batch.failures.size() == 3);
  CHECK(batch.failures[0].url == refs[2].url);
  CHECK(batch.failures[0].transient);
  CHECK_FALSE(batch.failures[1].transient);
  CHECK_FALSE(batch.failures[2].transient);
  for (std::size_t i = 1; i < batch.articles.size(); ++i) {
    CHECK(batch.articles[i - 1].published_at < batch.articles[i].published_at);
  }
  for (auto& a : batch.articles) {
    CHECK(a.article_id == article_id_for_url(a.url));
    CHECK(a.body.size() >= kMinBodyChars);
    CHECK(a.body.rfind(a.first_paragraph, 0) == 0);
  }
}
