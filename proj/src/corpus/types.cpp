#include "policystory/corpus/types.hpp"

#include <cctype>
#include <set>

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"
#include "policystory/util/url.hpp"

namespace policystory::corpus {
namespace {

[[noreturn]] void invalid(std::string_view type, std::string_view invariant) {
  throw ValidationError(std::string(type) + ": " + std::string(invariant));
}

}  // namespace

bool is_slug(std::string_view s) {
  if (s.empty() || s.front() == '-' || s.back() == '-') return false;
  char prev = 0;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok || (c == '-' && prev == '-')) return false;
    prev = c;
  }
  return true;
}

int expected_batch_count(std::size_t source_count, int batch_size) {
  return static_cast<int>((source_count + static_cast<std::size_t>(batch_size) - 1) /
                          static_cast<std::size_t>(batch_size));
}

const Topic* TopicTaxonomy::find(std::string_view topic_id) const {
  for (const auto& t : topics) {
    if (t.topic_id == topic_id) return &t;
  }
  return nullptr;
}

std::vector<Topic> TopicTaxonomy::substantive() const {
  std::vector<Topic> out;
  for (const auto& t : topics) {
    if (t.topic_id != fallback_topic_id) out.push_back(t);
  }
  return out;
}

void TopicTaxonomy::validate() const {
  if (topics.size() < 2) invalid("TopicTaxonomy", "taxonomy has >= 2 topics");
  std::set<std::string> seen;
  for (const auto& t : topics) {
    if (!is_slug(t.topic_id)) invalid("TopicTaxonomy", "topic_id '" + t.topic_id + "' is a slug");
    if (!seen.insert(t.topic_id).second) invalid("TopicTaxonomy", "topic_ids unique");
    if (text::trim(t.label).empty()) invalid("TopicTaxonomy", "topic label non-empty");
  }
  if (!contains(fallback_topic_id)) invalid("TopicTaxonomy", "fallback_topic_id present in topics");
}

void PolicyEvent::validate() const {
  if (!is_slug(event_id)) invalid("PolicyEvent", "event_id is a slug");
  if (text::trim(name).empty()) invalid("PolicyEvent", "name non-empty");
  if (query.required_terms.empty() && query.alternative_groups.empty()) {
    invalid("PolicyEvent", "query non-empty");
  }
  if (!(date_window.start <= date_window.end)) {
    invalid("PolicyEvent", "date_window.start <= date_window.end");
  }
  taxonomy.validate();
  if (per_year_cap < 1) invalid("PolicyEvent", "per_year_cap >= 1");
}

void Article::validate() const {
  if (text::trim(body).empty()) invalid("Article", "body non-empty");
  if (!is_absolute_url(url)) invalid("Article", "url absolute");
  if (article_id != article_id_for_url(url)) {
    invalid("Article", "article_id is the hash of the canonical url");
  }
  if (year != published_at.year) invalid("Article", "year equals the year of published_at");
  if (!is_slug(event_id)) invalid("Article", "event_id is a slug");
  if (topic_id && !is_slug(*topic_id)) invalid("Article", "topic_id is a slug");
}

Unit Unit::from_name(std::string_view name) {
  if (name == "INR") return inr();
  if (name == "percent") return percent();
  if (name == "count") return count();
  return named(std::string(name));
}

std::string Unit::name() const {
  switch (kind) {
    case UnitKind::inr:
      return "INR";
    case UnitKind::percent:
      return "percent";
    case UnitKind::count:
      return "count";
    case UnitKind::other:
      return other;
  }
  return other;
}

void NumericFact::validate() const {
  if (text::trim(key).empty()) invalid("NumericFact", "key non-empty");
  if (text::trim(raw_value).empty()) invalid("NumericFact", "raw_value non-empty");
  if (normalized_value && !unit) invalid("NumericFact", "normalized_value present => unit present");
  if (unit && unit->kind == UnitKind::other && unit->other.empty()) {
    invalid("NumericFact", "other unit has a name");
  }
}

void GlossaryEntry::validate() const {
  if (text::trim(term).empty()) invalid("GlossaryEntry", "term non-empty");
  if (text::trim(definition).empty()) invalid("GlossaryEntry", "definition non-empty");
}

std::string StoryKey::id() const { return event_id + "/" + topic_id + "/" + std::to_string(year); }

StoryKey StoryKey::parse(std::string_view story_id) {
  auto a = story_id.find('/');
  auto b = a == std::string_view::npos ? a : story_id.find('/', a + 1);
  if (b == std::string_view::npos || story_id.find('/', b + 1) != std::string_view::npos) {
    invalid("Story", "story_id has the form {event_id}/{topic_id}/{year}");
  }
  StoryKey key{std::string(story_id.substr(0, a)), std::string(story_id.substr(a + 1, b - a - 1)),
               0};
  std::string_view year = story_id.substr(b + 1);
  if (year.size() != 4 || !is_slug(key.event_id) || !is_slug(key.topic_id)) {
    invalid("Story", "story_id has the form {event_id}/{topic_id}/{year}");
  }
  for (char c : year) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      invalid("Story", "story_id has the form {event_id}/{topic_id}/{year}");
    }
    key.year = key.year * 10 + (c - '0');
  }
  return key;
}

void Story::validate() const {
  StoryKey::parse(story_id);
  if (source_article_ids.empty()) invalid("Story", "source_article_ids non-empty");
  if (batch_count != expected_batch_count(source_article_ids.size())) {
    invalid("Story", "batch_count = ceil(|source_article_ids| / 20)");
  }
  if (text::trim(l2_text).empty()) invalid("Story", "l2_text non-empty");
  if (!(text::word_count(l1_text) < text::word_count(l2_text))) {
    invalid("Story", "l1_text word count < l2_text word count");
  }
  if (!is_iso_timestamp(generated_at)) invalid("Story", "generated_at is an ISO-8601 UTC timestamp");
  if (text::trim(generator).empty()) invalid("Story", "generator non-empty");
  for (const auto& f : numeric_facts) f.validate();
  for (const auto& g : glossary) g.validate();
}

}  // namespace policystory::corpus
