#include <doctest.h>

#include <filesystem>
#include <random>

#include "policystory/corpus/json.hpp"
#include "policystory/corpus/store.hpp"
#include "policystory/classify/presets.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/url.hpp"
#include "support.hpp"

using namespace policystory;
using namespace policystory::corpus;
using testsupport::TempDir;

namespace {

PolicyEvent budget_event() {
  auto e = *classify::preset_event("union-budget");
  e.date_window = {Date::parse("2019-01-01"), Date::parse("2024-12-31")};
  return e;
}

Article make_article(int n, int year = 2021) {
  Article a;
  a.url = "https://example.in/a/" + std::to_string(n);
  a.article_id = article_id_for_url(a.url);
  a.title = "Article " + std::to_string(n);
  a.published_at = Date{year, 1 + n % 12, 1 + n % 28};
  a.body = "Body text of article " + std::to_string(n) + ".";
  a.first_paragraph = a.body;
  a.event_id = "union-budget";
  a.year = year;
  a.topic_id = "taxation";
  return a;
}

Story make_story(const std::vector<Article>& sources, int year, int batch_count) {
  Story s;
  s.story_id = StoryKey{"union-budget", "taxation", year}.id();
  s.l2_text = "Long story text for the year.";
  s.l1_text = "Short.";
  for (const auto& a : sources) s.source_article_ids.push_back(a.article_id);
  s.batch_count = batch_count;
  s.generated_at = "2025-01-01T00:00:00Z";
  s.generator = "test";
  return s;
}

}  // namespace

TEST_CASE("upserting the same article twice keeps one copy") {
  TempDir dir;
  Store store(dir.path());
  store.upsert(budget_event());
  auto a = make_article(1);
  store.upsert(a);
  auto before = store_checksum(dir.path());
  store.upsert(a);
  CHECK(store.list_articles("union-budget").size() == 1);
  CHECK(store_checksum(dir.path()) == before);
}

TEST_CASE("article with empty body is rejected naming the invariant") {
  TempDir dir;
  Store store(dir.path());
  store.upsert(budget_event());
  auto a = make_article(1);
  a.body = "   ";
  try {
    store.upsert(a);
    FAIL("accepted an empty body");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("body non-empty") != std::string::npos);
  }
}

TEST_CASE("story batch_count must equal ceil(sources / 20)") {
  TempDir dir;
  Store store(dir.path());
  store.upsert(budget_event());
  std::vector<Article> sources;
  for (int i = 0; i < 45; ++i) {
    sources.push_back(make_article(i));
    store.upsert(sources.back());
  }
  CHECK_THROWS_AS(store.upsert(make_story(sources, 2021, 2)), ValidationError);
  CHECK_NOTHROW(store.upsert(make_story(sources, 2021, 3)));
}

TEST_CASE("expected_batch_count agrees with integer ceiling") {
  for (std::size_t n = 1; n <= 500; ++n) {
    int oracle = static_cast<int>(n / 20 + (n % 20 != 0 ? 1 : 0));
    REQUIRE(expected_batch_count(n) == oracle);
  }
}

TEST_CASE("story sources must exist in the store") {
  TempDir dir;
  Store store(dir.path());
  store.upsert(budget_event());
  auto a = make_article(1);
  CHECK_THROWS_AS(store.upsert(make_story({a}, 2021, 1)), ValidationError);
}

TEST_CASE("query_stories orders by year both ways") {
  TempDir dir;
  testsupport::build_api_fixture_store(dir.path());
  Store store(dir.path());
  auto asc = store.query_stories("union-budget", std::string("defense"));
  REQUIRE(asc.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(StoryKey::parse(asc[i].story_id).year == 2019 + i);
  auto desc = store.query_stories("union-budget", std::string("defense"), std::nullopt, Order::reverse);
  REQUIRE(desc.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(StoryKey::parse(desc[i].story_id).year == 2024 - i);
  CHECK_THROWS_AS(store.query_stories("no-such-event"), NotFoundError);
  CHECK(store.check_integrity("union-budget").empty());
}

TEST_CASE("json round trip is identity for every record type") {
  auto e = budget_event();
  CHECK(event_from_json(to_json(e)) == e);
  CHECK(taxonomy_from_json(to_json(e.taxonomy)) == e.taxonomy);
  CHECK(keyword_structure_from_json(to_json(e.query)) == e.query);

  auto a = make_article(3);
  a.authors = {"A. Writer", "B. Writer"};
  a.article_summary = "Summary.";
  CHECK(article_from_json(to_json(a)) == a);
  a.topic_id.reset();
  a.article_summary.reset();
  CHECK(article_from_json(to_json(a)) == a);

  NumericFact f{"Defense Budget", "INR 5.94 lakh crore", Decimal::parse("5940000000000"), Unit::inr()};
  CHECK(numeric_fact_from_json(to_json(f)) == f);
  NumericFact g{"Outlook", "robust", std::nullopt, std::nullopt};
  CHECK(numeric_fact_from_json(to_json(g)) == g);
  NumericFact h{"Area", "12 hectares", Decimal::parse("12"), Unit::named("hectares")};
  CHECK(numeric_fact_from_json(to_json(h)) == h);

  GlossaryEntry ge{"MSP", "Minimum support price.", {"farmers-protests/msp-economic-demands/2021"}};
  CHECK(glossary_entry_from_json(to_json(ge)) == ge);

  auto s = make_story({a}, 2021, 1);
  s.numeric_facts = {f, g};
  s.glossary = {ge};
  CHECK(story_from_json(to_json(s)) == s);
}

TEST_CASE("story ids round trip") {
  StoryKey k{"farmers-protests", "laws-legal-process", 2021};
  auto back = StoryKey::parse(k.id());
  CHECK(back.event_id == k.event_id);
  CHECK(back.topic_id == k.topic_id);
  CHECK(back.year == 2021);
  CHECK_THROWS_AS(StoryKey::parse("no-slashes"), ValidationError);
  CHECK_THROWS_AS(StoryKey::parse("a/b/notayear"), ValidationError);
}

TEST_CASE("store checksum of a missing root is the empty tree") {
  TempDir dir;
  CHECK(store_checksum(dir / "missing") == store_checksum(dir.path()));
}

TEST_CASE("slugs") {
  CHECK(is_slug("union-budget"));
  CHECK(is_slug("a1"));
  CHECK_FALSE(is_slug("Union"));
  CHECK_FALSE(is_slug("-a"));
  CHECK_FALSE(is_slug("a--b"));
  CHECK_FALSE(is_slug(""));
}

TEST_CASE("decimal scaling is exact") {
  CHECK(Decimal::parse("5.94").scaled_by_pow10(12).to_string() == "5940000000000");
  CHECK(Decimal::parse("-0.5").scaled_by_pow10(1).to_string() == "-5");
  CHECK(Decimal::parse("1.2300").to_string() == "1.23");
  CHECK(Decimal::parse("0.000").is_zero());
  CHECK_THROWS_AS(Decimal::parse("1,000"), ParseError);
  CHECK_THROWS_AS(Decimal::parse(""), ParseError);
}

TEST_CASE("url canonicalization drops tracking and case noise") {
  CHECK(canonicalize_url("HTTPS://Example.IN/a/b/?utm_source=x&id=3") ==
        canonicalize_url("https://example.in/a/b?id=3"));
  CHECK(article_id_for_url("https://example.in/x?utm_medium=social") ==
        article_id_for_url("https://example.in/x"));
  CHECK(article_id_for_url("https://example.in/x").size() == 64);
}
