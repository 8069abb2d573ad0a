#include "policystory/ingestion/query.hpp"

#include <cctype>

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::ingestion {
namespace {

std::string quote(const std::string& term) {
  std::string_view t = text::trim(term);
  if (t.empty()) throw ValidationError("KeywordQuery: terms non-empty");
  if (t.find('"') != std::string_view::npos) {
    throw ValidationError("KeywordQuery: term '" + term + "' must not contain a double quote");
  }
  return "\"" + std::string(t) + "\"";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  corpus::KeywordStructure parse() {
    corpus::KeywordStructure out;
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("query: empty");
    for (;;) {
      skip_ws();
      if (peek() == '(') {
        ++pos_;
        std::vector<std::string> group{phrase()};
        while (keyword("OR")) group.push_back(phrase());
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        out.alternative_groups.push_back(std::move(group));
      } else {
        if (!out.alternative_groups.empty()) fail("required term after an OR-group");
        out.required_terms.push_back(phrase());
      }
      if (!keyword("AND")) break;
    }
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    std::size_t after = pos_ + kw.size();
    if (after < s_.size() && !std::isspace(static_cast<unsigned char>(s_[after]))) return false;
    pos_ = after;
    return true;
  }

  std::string phrase() {
    skip_ws();
    if (peek() != '"') fail("expected a double-quoted phrase");
    std::size_t close = s_.find('"', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated phrase");
    std::string term(s_.substr(pos_ + 1, close - pos_ - 1));
    if (text::trim(term).empty()) fail("empty phrase");
    pos_ = close + 1;
    return term;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("query: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

KeywordQuery build_query(const corpus::KeywordStructure& structure) {
  if (structure.required_terms.empty() && structure.alternative_groups.empty()) {
    throw ValidationError("KeywordQuery: term list non-empty");
  }
  KeywordQuery q;
  std::vector<std::string> clauses;
  for (const auto& t : structure.required_terms) {
    clauses.push_back(quote(t));
    q.required_terms.emplace_back(text::trim(t));
  }
  for (const auto& group : structure.alternative_groups) {
    if (group.empty()) throw ValidationError("KeywordQuery: OR-groups non-empty");
    std::vector<std::string> alts;
    std::vector<std::string> trimmed;
    for (const auto& t : group) {
      alts.push_back(quote(t));
      trimmed.emplace_back(text::trim(t));
    }
    clauses.push_back("(" + text::join(alts, " OR ") + ")");
    q.alternative_groups.push_back(std::move(trimmed));
  }
  q.rendered = text::join(clauses, " AND ");
  return q;
}

KeywordQuery build_query(const corpus::PolicyEvent& event) { return build_query(event.query); }

corpus::KeywordStructure parse_query(std::string_view rendered) { return Parser(rendered).parse(); }

}  // namespace policystory::ingestion
