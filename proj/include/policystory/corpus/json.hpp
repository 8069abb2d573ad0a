#pragma once

#include <string>

#include <json.hpp>

#include "policystory/corpus/types.hpp"

namespace policystory::corpus {

// On-disk JSON. Keys are snake_case in the field order of the C++ types,
// dates are YYYY-MM-DD, absent optionals are omitted and
// NumericFact.normalized_value is a decimal string. Decoding is strict:
// missing or mistyped fields raise DecodeError.
using ojson = nlohmann::ordered_json;

ojson to_json(const KeywordStructure& v);
ojson to_json(const Topic& v);
ojson to_json(const TopicTaxonomy& v);
ojson to_json(const PolicyEvent& v);
ojson to_json(const Article& v);
ojson to_json(const NumericFact& v);
ojson to_json(const GlossaryEntry& v);
ojson to_json(const Story& v);

KeywordStructure keyword_structure_from_json(const ojson& j);
TopicTaxonomy taxonomy_from_json(const ojson& j);
PolicyEvent event_from_json(const ojson& j);
Article article_from_json(const ojson& j);
NumericFact numeric_fact_from_json(const ojson& j);
GlossaryEntry glossary_entry_from_json(const ojson& j);
Story story_from_json(const ojson& j);

// Canonical document text: 2-space indent, trailing newline.
std::string dump_document(const ojson& j);

}  // namespace policystory::corpus
