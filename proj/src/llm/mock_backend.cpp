#include "policystory/llm/mock_backend.hpp"

#include <array>
#include <cctype>
#include <regex>
#include <set>
#include <utility>
#include <vector>

#include "policystory/util/text.hpp"

namespace policystory::llm {
namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> kStop = {
      "about",   "above",    "across",  "after",    "again",   "against", "also",     "among",
      "around",  "because",  "before",  "being",    "below",   "between", "both",     "changes",
      "coverage", "during",  "each",    "from",     "further", "have",    "including", "into",
      "issue",   "issues",   "its",     "itself",   "like",    "more",    "most",     "news",
      "other",   "over",     "policy",  "related",  "reports", "same",    "scope",    "such",
      "than",    "that",     "their",   "them",     "then",    "there",   "these",    "they",
      "this",    "those",    "through", "topic",    "topics",  "under",   "until",    "what",
      "when",    "where",    "which",   "while",    "with",    "within",  "without",  "would",
      "india",   "indian",   "government", "announced", "articles", "article", "year",  "years",
      "union",   "budget",   "farmers", "their",    "various", "matters", "stories",  "story"};
  return kStop;
}

std::vector<std::string> keywords_of(std::string_view s) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (word.size() >= 4 && !stopwords().count(word)) out.push_back(word);
    word.clear();
  };
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  // acronyms such as MSP or GST are short but distinctive
  std::string token;
  auto flush_acronym = [&] {
    if (token.size() >= 2 && token.size() < 4) out.push_back(text::to_lower(token));
    token.clear();
  };
  for (char c : s) {
    if (std::isupper(static_cast<unsigned char>(c))) {
      token.push_back(c);
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      token.clear();
    } else {
      flush_acronym();
    }
  }
  flush_acronym();
  return out;
}

bool mentions(std::string_view haystack, const std::string& word) {
  if (text::contains_phrase_ci(haystack, word)) return true;
  if (text::contains_phrase_ci(haystack, word + "s")) return true;
  if (word.size() > 4 && word.back() == 's' &&
      text::contains_phrase_ci(haystack, word.substr(0, word.size() - 1))) {
    return true;
  }
  return false;
}

std::string first_sentences(std::string_view s, std::size_t n) {
  auto sentences = text::split_sentences(s);
  if (sentences.size() > n) sentences.resize(n);
  return text::join(sentences, " ");
}

std::string classify(std::string_view user) {
  std::string taxonomy = prompt_section(user, "TAXONOMY");
  std::string article = prompt_section(user, "ARTICLE");
  for (const auto& line : text::split_lines(taxonomy)) {
    std::string_view l = text::trim(line);
    if (l.rfind("- ", 0) == 0) l.remove_prefix(2);
    auto colon = l.find(": ");
    std::string_view label = text::trim(l.substr(0, colon));
    if (label.empty()) continue;
    for (const auto& kw : keywords_of(l)) {
      if (mentions(article, kw)) return std::string(label);
    }
  }
  return prompt_section(user, "FALLBACK");
}

std::string digest_lines(std::string_view batch) {
  std::vector<std::string> lines;
  for (const auto& item : text::split_lines(batch)) {
    std::string_view t = text::trim(item);
    if (t.empty()) continue;
    // items arrive as "(YYYY-MM-DD) summary"
    if (t.size() > 13 && t.front() == '(' && t[11] == ')') {
      lines.push_back(std::string(t.substr(1, 10)) + ": " + std::string(text::trim(t.substr(12))));
    } else {
      lines.emplace_back(t);
    }
  }
  return text::join(lines, "\n");
}

std::string story_first(std::string_view user) {
  return "This story follows " + prompt_section(user, "TOPIC") + " through " +
         prompt_section(user, "YEAR") + ".\n\n" + digest_lines(prompt_section(user, "BATCH"));
}

std::string story_fold(std::string_view user) {
  return prompt_section(user, "DRAFT") + "\n\n" + digest_lines(prompt_section(user, "BATCH"));
}

const std::vector<std::string>& key_connectors() {
  static const std::vector<std::string> kWords = {
      "a",       "an",      "the",     "of",      "at",     "to",       "by",        "from",
      "for",     "was",     "were",    "is",      "are",    "be",       "been",      "worth",
      "about",   "around",  "nearly",  "over",    "under",  "rose",     "raised",    "increased",
      "reached", "stood",   "totalled", "totaling", "allocated", "and",  "with",      "set",
      "up",      "hiked",   "cut",     "reduced", "of",     "than",     "announced", "got",
      "received", "its",    "their",   "crossed", "touched", "grew",    "fell",      "estimated",
      "pegged",  "projected", "budgeted", "earmarked", "provided", "saw", "had",     "has",
      "this",    "that",    "on",      "in",      "as",     "amounting", "amounted", "outlay"};
  return kWords;
}

std::string key_before(std::string_view prefix) {
  std::vector<std::string> words;
  std::string w;
  for (char c : prefix) {
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '-') {
      w.push_back(c);
    } else {
      if (!w.empty()) words.push_back(w);
      w.clear();
      if (c == '.' || c == ';' || c == ':' || c == '\n') words.clear();
    }
  }
  if (!w.empty()) words.push_back(w);
  auto is_connector = [](const std::string& word) {
    std::string l = text::to_lower(word);
    for (const auto& c : key_connectors()) {
      if (l == c) return true;
    }
    return false;
  };
  while (!words.empty() && is_connector(words.back())) words.pop_back();
  std::vector<std::string> key;
  while (!words.empty() && key.size() < 2 && !is_connector(words.back())) {
    key.insert(key.begin(), words.back());
    words.pop_back();
  }
  if (key.empty()) return "Amount";
  for (auto& k : key) {
    k[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(k[0])));
  }
  return text::join(key, " ");
}

std::string numeric(std::string_view user) {
  static const std::regex kAmount(
      R"((INR|Rs\.?|\xE2\x82\xB9) ?[0-9][0-9,]*(\.[0-9]+)?( (lakh crore|lakh-crore|lakh|lakhs|lac|crore|crores|thousand|million|billion|trillion))?)");
  std::string story = prompt_section(user, "STORY");
  std::vector<std::string> lines;
  for (auto it = std::sregex_iterator(story.begin(), story.end(), kAmount); it != std::sregex_iterator();
       ++it) {
    auto pos = static_cast<std::size_t>(it->position());
    std::size_t from = pos > 80 ? pos - 80 : 0;
    lines.push_back(key_before(std::string_view(story).substr(from, pos - from)) + ": " + it->str());
  }
  return lines.empty() ? "No numeric facts found." : text::join(lines, "\n");
}

const std::vector<std::pair<std::string, std::string>>& mock_glossary() {
  static const std::vector<std::pair<std::string, std::string>> kTerms = {
      {"fiscal deficit",
       "The gap between what the government spends and what it earns in a year, covered by borrowing."},
      {"MSP",
       "Minimum Support Price, the price at which the government promises to buy certain crops from farmers."},
      {"capital expenditure",
       "Government spending on long-lasting assets such as roads, railways and defence equipment."},
      {"GST", "Goods and Services Tax, a single indirect tax on the supply of goods and services."},
      {"disinvestment", "The sale of the government's shares in public sector companies."},
      {"interim budget",
       "A stop-gap budget presented before a general election until a new government presents a full one."},
      {"farm laws",
       "Three 2020 laws that changed how farm produce could be bought, sold and stored; they were repealed in 2021."},
      {"mandi", "A regulated wholesale market where farmers sell their produce."},
      {"APMC",
       "Agricultural Produce Market Committee, the state body that runs regulated farm markets."},
      {"standard deduction",
       "A fixed amount salaried taxpayers subtract from their income before tax is worked out."},
      {"lakh crore", "One lakh crore equals 10^12, that is one trillion."},
      {"subsidy", "Money the government pays to lower the price of an essential good or service."}};
  return kTerms;
}

std::string jargon(std::string_view user) {
  std::string story = prompt_section(user, "STORY");
  std::vector<std::string> lines;
  for (const auto& [term, definition] : mock_glossary()) {
    if (text::contains_phrase_ci(story, term)) lines.push_back(term + ": " + definition);
  }
  return lines.empty() ? "NONE" : text::join(lines, "\n");
}

}  // namespace

std::string prompt_section(std::string_view prompt, std::string_view name) {
  std::string open = "<<" + std::string(name) + ">>";
  std::string close = "<</" + std::string(name) + ">>";
  auto a = prompt.find(open);
  if (a == std::string_view::npos) return {};
  a += open.size();
  auto b = prompt.find(close, a);
  if (b == std::string_view::npos) b = prompt.size();
  return std::string(text::trim(prompt.substr(a, b - a)));
}

std::string prompt_task(std::string_view system_prompt) {
  auto a = system_prompt.find("[task:");
  if (a == std::string_view::npos) return {};
  a += 6;
  auto b = system_prompt.find(']', a);
  if (b == std::string_view::npos) return {};
  return std::string(system_prompt.substr(a, b - a));
}

std::string MockBackend::respond(const ChatRequest& request) {
  const std::string task = prompt_task(request.system_prompt);
  const std::string_view user = request.user_prompt;
  if (task == "classify") return classify(user);
  if (task == "summary") return first_sentences(prompt_section(user, "ARTICLE"), 6);
  if (task == "story_first") return story_first(user);
  if (task == "story_fold") return story_fold(user);
  if (task == "story_brief") return first_sentences(prompt_section(user, "STORY"), 3);
  if (task == "numeric") return numeric(user);
  if (task == "jargon") return jargon(user);
  return "";
}

BackendReply MockBackend::send(const ChatRequest& request) { return {200, respond(request), {}}; }

}  // namespace policystory::llm
