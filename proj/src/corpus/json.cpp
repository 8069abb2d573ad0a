#include "policystory/corpus/json.hpp"

#include "policystory/util/errors.hpp"

namespace policystory::corpus {
namespace {

const ojson& field(const ojson& j, const char* name, const char* type) {
  if (!j.is_object()) throw DecodeError(std::string(type) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw DecodeError(std::string(type) + ": missing field '" + name + "'");
  return *it;
}

std::string str(const ojson& j, const char* name, const char* type) {
  const auto& v = field(j, name, type);
  if (!v.is_string()) throw DecodeError(std::string(type) + ": field '" + name + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_str(const ojson& j, const char* name, const char* type) {
  if (!j.contains(name) || j[name].is_null()) return std::nullopt;
  return str(j, name, type);
}

int integer(const ojson& j, const char* name, const char* type) {
  const auto& v = field(j, name, type);
  if (!v.is_number_integer()) {
    throw DecodeError(std::string(type) + ": field '" + name + "' must be an integer");
  }
  return v.get<int>();
}

std::vector<std::string> str_list(const ojson& j, const char* name, const char* type) {
  const auto& v = field(j, name, type);
  if (!v.is_array()) throw DecodeError(std::string(type) + ": field '" + name + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw DecodeError(std::string(type) + ": field '" + name + "' must hold strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

Date date(const ojson& j, const char* name, const char* type) {
  try {
    return Date::parse(str(j, name, type));
  } catch (const ValidationError& e) {
    throw DecodeError(std::string(type) + ": field '" + name + "': " + e.what());
  }
}

template <typename T, typename F>
std::vector<T> list_of(const ojson& j, const char* name, const char* type, F decode) {
  const auto& v = field(j, name, type);
  if (!v.is_array()) throw DecodeError(std::string(type) + ": field '" + name + "' must be a list");
  std::vector<T> out;
  for (const auto& e : v) out.push_back(decode(e));
  return out;
}

ojson str_array(const std::vector<std::string>& v) {
  ojson a = ojson::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

ojson to_json(const KeywordStructure& v) {
  ojson groups = ojson::array();
  for (const auto& g : v.alternative_groups) groups.push_back(str_array(g));
  return ojson{{"required_terms", str_array(v.required_terms)}, {"alternative_groups", groups}};
}

ojson to_json(const Topic& v) {
  return ojson{{"topic_id", v.topic_id}, {"label", v.label}, {"description", v.description}};
}

ojson to_json(const TopicTaxonomy& v) {
  ojson topics = ojson::array();
  for (const auto& t : v.topics) topics.push_back(to_json(t));
  return ojson{{"topics", topics}, {"fallback_topic_id", v.fallback_topic_id}};
}

ojson to_json(const PolicyEvent& v) {
  return ojson{{"event_id", v.event_id},
               {"name", v.name},
               {"query", to_json(v.query)},
               {"date_window", {{"start", v.date_window.start.iso()}, {"end", v.date_window.end.iso()}}},
               {"taxonomy", to_json(v.taxonomy)},
               {"per_year_cap", v.per_year_cap}};
}

ojson to_json(const Article& v) {
  ojson j{{"article_id", v.article_id},
          {"url", v.url},
          {"title", v.title},
          {"published_at", v.published_at.iso()},
          {"authors", str_array(v.authors)},
          {"body", v.body},
          {"first_paragraph", v.first_paragraph},
          {"event_id", v.event_id},
          {"year", v.year}};
  if (v.topic_id) j["topic_id"] = *v.topic_id;
  if (v.article_summary) j["article_summary"] = *v.article_summary;
  return j;
}

ojson to_json(const NumericFact& v) {
  ojson j{{"key", v.key}, {"raw_value", v.raw_value}};
  if (v.normalized_value) j["normalized_value"] = v.normalized_value->to_string();
  if (v.unit) j["unit"] = v.unit->name();
  return j;
}

ojson to_json(const GlossaryEntry& v) {
  return ojson{{"term", v.term}, {"definition", v.definition}, {"story_ids", str_array(v.story_ids)}};
}

ojson to_json(const Story& v) {
  ojson facts = ojson::array();
  for (const auto& f : v.numeric_facts) facts.push_back(to_json(f));
  ojson glossary = ojson::array();
  for (const auto& g : v.glossary) glossary.push_back(to_json(g));
  return ojson{{"story_id", v.story_id},
               {"l2_text", v.l2_text},
               {"l1_text", v.l1_text},
               {"numeric_facts", facts},
               {"glossary", glossary},
               {"source_article_ids", str_array(v.source_article_ids)},
               {"batch_count", v.batch_count},
               {"generated_at", v.generated_at},
               {"generator", v.generator}};
}

KeywordStructure keyword_structure_from_json(const ojson& j) {
  KeywordStructure k;
  k.required_terms = str_list(j, "required_terms", "KeywordStructure");
  const auto& groups = field(j, "alternative_groups", "KeywordStructure");
  if (!groups.is_array()) throw DecodeError("KeywordStructure: alternative_groups must be a list");
  for (const auto& g : groups) {
    std::vector<std::string> group;
    if (!g.is_array()) throw DecodeError("KeywordStructure: each alternative group must be a list");
    for (const auto& t : g) {
      if (!t.is_string()) throw DecodeError("KeywordStructure: terms must be strings");
      group.push_back(t.get<std::string>());
    }
    k.alternative_groups.push_back(std::move(group));
  }
  return k;
}

TopicTaxonomy taxonomy_from_json(const ojson& j) {
  TopicTaxonomy t;
  t.topics = list_of<Topic>(j, "topics", "TopicTaxonomy", [](const ojson& e) {
    return Topic{str(e, "topic_id", "Topic"), str(e, "label", "Topic"), str(e, "description", "Topic")};
  });
  t.fallback_topic_id = str(j, "fallback_topic_id", "TopicTaxonomy");
  return t;
}

PolicyEvent event_from_json(const ojson& j) {
  PolicyEvent e;
  e.event_id = str(j, "event_id", "PolicyEvent");
  e.name = str(j, "name", "PolicyEvent");
  e.query = keyword_structure_from_json(field(j, "query", "PolicyEvent"));
  const auto& w = field(j, "date_window", "PolicyEvent");
  e.date_window = {date(w, "start", "PolicyEvent.date_window"), date(w, "end", "PolicyEvent.date_window")};
  e.taxonomy = taxonomy_from_json(field(j, "taxonomy", "PolicyEvent"));
  e.per_year_cap = integer(j, "per_year_cap", "PolicyEvent");
  return e;
}

Article article_from_json(const ojson& j) {
  Article a;
  a.article_id = str(j, "article_id", "Article");
  a.url = str(j, "url", "Article");
  a.title = str(j, "title", "Article");
  a.published_at = date(j, "published_at", "Article");
  a.authors = str_list(j, "authors", "Article");
  a.body = str(j, "body", "Article");
  a.first_paragraph = str(j, "first_paragraph", "Article");
  a.event_id = str(j, "event_id", "Article");
  a.year = integer(j, "year", "Article");
  a.topic_id = opt_str(j, "topic_id", "Article");
  a.article_summary = opt_str(j, "article_summary", "Article");
  return a;
}

NumericFact numeric_fact_from_json(const ojson& j) {
  NumericFact f;
  f.key = str(j, "key", "NumericFact");
  f.raw_value = str(j, "raw_value", "NumericFact");
  if (auto n = opt_str(j, "normalized_value", "NumericFact")) {
    try {
      f.normalized_value = Decimal::parse(*n);
    } catch (const ParseError& e) {
      throw DecodeError(std::string("NumericFact: normalized_value: ") + e.what());
    }
  }
  if (auto u = opt_str(j, "unit", "NumericFact")) f.unit = Unit::from_name(*u);
  return f;
}

GlossaryEntry glossary_entry_from_json(const ojson& j) {
  return GlossaryEntry{str(j, "term", "GlossaryEntry"), str(j, "definition", "GlossaryEntry"),
                       str_list(j, "story_ids", "GlossaryEntry")};
}

Story story_from_json(const ojson& j) {
  Story s;
  s.story_id = str(j, "story_id", "Story");
  s.l2_text = str(j, "l2_text", "Story");
  s.l1_text = str(j, "l1_text", "Story");
  s.numeric_facts = list_of<NumericFact>(j, "numeric_facts", "Story", numeric_fact_from_json);
  s.glossary = list_of<GlossaryEntry>(j, "glossary", "Story", glossary_entry_from_json);
  s.source_article_ids = str_list(j, "source_article_ids", "Story");
  s.batch_count = integer(j, "batch_count", "Story");
  s.generated_at = str(j, "generated_at", "Story");
  s.generator = str(j, "generator", "Story");
  return s;
}

std::string dump_document(const ojson& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

}  // namespace policystory::corpus
