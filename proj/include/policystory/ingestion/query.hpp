#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "policystory/corpus/types.hpp"

namespace policystory::ingestion {

// Keyword query in the archive's boolean syntax, e.g.
//   "farmers" AND ("protest" OR "agitation")
// Required terms come first, then one parenthesized OR-group per alternative
// group (parenthesized even when it holds a single term, so the structure
// survives a parse round trip).
struct KeywordQuery {
  std::vector<std::string> required_terms;
  std::vector<std::vector<std::string>> alternative_groups;
  std::string rendered;

  corpus::KeywordStructure structure() const { return {required_terms, alternative_groups}; }
};

KeywordQuery build_query(const corpus::KeywordStructure& structure);
KeywordQuery build_query(const corpus::PolicyEvent& event);

// Parses a rendered query back into its structure. Throws ParseError.
corpus::KeywordStructure parse_query(std::string_view rendered);

}  // namespace policystory::ingestion
