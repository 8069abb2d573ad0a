#include <doctest.h>

#include <random>
#include <set>

#include "policystory/util/csv.hpp"
#include "policystory/util/date.hpp"
#include "policystory/util/json_schema.hpp"
#include "policystory/util/random.hpp"
#include "policystory/util/retry.hpp"
#include "policystory/util/text.hpp"

using namespace policystory;
using nlohmann::json;

TEST_CASE("backoff delays double and cap") {
  RetryPolicy p;
  p.base_delay = std::chrono::milliseconds(100);
  p.max_delay = std::chrono::milliseconds(1000);
  CHECK(p.delay_before_retry(0).count() == 100);
  CHECK(p.delay_before_retry(1).count() == 200);
  CHECK(p.delay_before_retry(3).count() == 800);
  CHECK(p.delay_before_retry(4).count() == 1000);
  CHECK(p.delay_before_retry(60).count() == 1000);
  for (int k = 0; k < 40; ++k) CHECK(p.delay_before_retry(k) <= p.delay_before_retry(k + 1));
}

TEST_CASE("sample_indices draws k distinct sorted indices") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {0u, 1u, 5u, 100u}) {
    for (std::size_t k : {0u, 1u, 3u, 100u, 200u}) {
      auto idx = sample_indices(n, k, rng);
      CHECK(idx.size() == std::min(n, k));
      CHECK(std::is_sorted(idx.begin(), idx.end()));
      CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == idx.size());
      for (auto i : idx) CHECK(i < n);
    }
  }
}

TEST_CASE("uniform_below stays in range and covers it") {
  std::mt19937_64 rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = uniform_below(rng, 7);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("csv quotes and round trips awkward fields") {
  std::vector<csv::Row> rows = {{"a", "b,c", "say \"hi\""}, {"line\nbreak", "", "x"}};
  CHECK(csv::parse(csv::format(rows)) == rows);
}

TEST_CASE("dates") {
  CHECK(Date::parse("2024-02-29").iso() == "2024-02-29");
  CHECK_THROWS(Date::parse("2023-02-29"));
  CHECK(days_in_month(2000, 2) == 29);
  CHECK(days_in_month(1900, 2) == 28);
  CHECK(is_iso_timestamp("2025-01-01T00:00:00Z"));
  CHECK_FALSE(is_iso_timestamp("2025-01-01"));
}

TEST_CASE("text helpers") {
  CHECK(text::word_count("  one two\nthree  ") == 3);
  CHECK(text::word_count("") == 0);
  CHECK(text::utf8_length("₹100") == 4);
  auto s = text::split_sentences("First one. Second one! Third? Dr. Rao spoke.");
  CHECK(s.size() >= 3);
  CHECK(text::contains_phrase_ci("The MSP demand", "msp"));
  CHECK_FALSE(text::contains_phrase_ci("transport", "port"));
}

TEST_CASE("schema subset validator reports pointers") {
  json schema = json::parse(R"({
    "type": "object",
    "required": ["a"],
    "additionalProperties": false,
    "properties": {
      "a": {"type": "array", "items": {"type": "integer", "minimum": 0}},
      "b": {"enum": ["x", "y"]}
    }
  })");
  CHECK(validate_json(schema, json::parse(R"({"a": [1, 2]})")).empty());
  auto errors = validate_json(schema, json::parse(R"({"a": [1, -2], "b": "z", "c": 1})"));
  CHECK(errors.size() == 3);
  bool pointer_seen = false;
  for (auto& e : errors) pointer_seen |= e.find("/a/1") != std::string::npos;
  CHECK(pointer_seen);
  CHECK_FALSE(validate_json(schema, json::parse("{}")).empty());
}
