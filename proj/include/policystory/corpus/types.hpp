#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policystory/util/date.hpp"
#include "policystory/util/decimal.hpp"

namespace policystory::corpus {

inline constexpr int kDefaultPerYearCap = 2000;
inline constexpr int kStoryBatchSize = 20;

// Boolean keyword structure: every required term AND one term out of each
// alternative group. Rendering and parsing live in ingestion/query.hpp.
struct KeywordStructure {
  std::vector<std::string> required_terms;
  std::vector<std::vector<std::string>> alternative_groups;

  bool operator==(const KeywordStructure&) const = default;
};

struct Topic {
  std::string topic_id;
  std::string label;
  std::string description;

  bool operator==(const Topic&) const = default;
};

struct TopicTaxonomy {
  std::vector<Topic> topics;
  std::string fallback_topic_id;

  const Topic* find(std::string_view topic_id) const;
  bool contains(std::string_view topic_id) const { return find(topic_id) != nullptr; }
  // Topics other than the fallback bucket, in taxonomy order.
  std::vector<Topic> substantive() const;
  void validate() const;

  bool operator==(const TopicTaxonomy&) const = default;
};

struct PolicyEvent {
  std::string event_id;
  std::string name;
  KeywordStructure query;
  DateRange date_window;
  TopicTaxonomy taxonomy;
  int per_year_cap = kDefaultPerYearCap;

  void validate() const;
  bool operator==(const PolicyEvent&) const = default;
};

struct Article {
  std::string article_id;
  std::string url;
  std::string title;
  Date published_at;
  std::vector<std::string> authors;
  std::string body;
  std::string first_paragraph;
  std::string event_id;
  int year = 0;
  std::optional<std::string> topic_id;
  std::optional<std::string> article_summary;

  void validate() const;
  bool operator==(const Article&) const = default;
};

enum class UnitKind { inr, percent, count, other };

struct Unit {
  UnitKind kind = UnitKind::count;
  std::string other;  // only meaningful for UnitKind::other

  static Unit inr() { return {UnitKind::inr, {}}; }
  static Unit percent() { return {UnitKind::percent, {}}; }
  static Unit count() { return {UnitKind::count, {}}; }
  static Unit named(std::string name) { return {UnitKind::other, std::move(name)}; }
  // "INR", "percent", "count", anything else becomes other(name).
  static Unit from_name(std::string_view name);
  std::string name() const;

  bool operator==(const Unit&) const = default;
};

struct NumericFact {
  std::string key;
  std::string raw_value;
  std::optional<Decimal> normalized_value;
  std::optional<Unit> unit;

  void validate() const;
  bool operator==(const NumericFact&) const = default;
};

struct GlossaryEntry {
  std::string term;
  std::string definition;
  std::vector<std::string> story_ids;

  void validate() const;
  bool operator==(const GlossaryEntry&) const = default;
};

struct Story {
  std::string story_id;
  std::string l2_text;
  std::string l1_text;
  std::vector<NumericFact> numeric_facts;
  std::vector<GlossaryEntry> glossary;
  std::vector<std::string> source_article_ids;
  int batch_count = 0;
  std::string generated_at;
  std::string generator;

  void validate() const;
  bool operator==(const Story&) const = default;
};

struct StoryKey {
  std::string event_id;
  std::string topic_id;
  int year = 0;

  std::string id() const;
  // Inverse of id(); throws ValidationError on a malformed id.
  static StoryKey parse(std::string_view story_id);
};

int expected_batch_count(std::size_t source_count, int batch_size = kStoryBatchSize);

// Lowercase slug: [a-z0-9]+ separated by single '-'.
bool is_slug(std::string_view s);

}  // namespace policystory::corpus
