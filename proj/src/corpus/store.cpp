#include "policystory/corpus/store.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "policystory/corpus/json.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/hash.hpp"
#include "policystory/util/text.hpp"

namespace fs = std::filesystem;

namespace policystory::corpus {
namespace {

constexpr const char* kEvents = "events";
constexpr const char* kArticles = "articles";
constexpr const char* kStories = "stories";
constexpr const char* kGlossary = "glossary";
constexpr const char* kIndexFile = "_index.json";

std::string story_file_stem(const StoryKey& key) {
  return key.topic_id + "." + std::to_string(key.year);
}

ojson load_document(const fs::path& path) {
  std::string text = read_file(path);
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

// Record files of a collection in file-name order.
std::vector<fs::path> record_files(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".json" && p.filename() != kIndexFile) {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

void require_topic(const PolicyEvent& event, const std::string& topic_id, const char* type) {
  if (!event.taxonomy.contains(topic_id)) {
    throw ValidationError(std::string(type) + ": topic_id '" + topic_id +
                          "' resolves in the event taxonomy");
  }
}

}  // namespace

std::string glossary_entry_id(const std::string& term) {
  std::string slug = text::slugify(term);
  return slug.empty() ? sha256_hex(text::to_lower(term)).substr(0, 16) : slug;
}

Store::Store(fs::path root) : root_(std::move(root)) {}

fs::path Store::collection_dir(const std::string& event_id, const std::string& collection) const {
  return root_ / event_id / collection;
}

void Store::write_record(const std::string& event_id, const std::string& collection,
                         const std::string& id, const std::string& file_stem,
                         const std::string& document) {
  std::lock_guard lock(write_mutex_);
  fs::path dir = collection_dir(event_id, collection);
  fs::path path = dir / (file_stem + ".json");
  std::error_code ec;
  if (fs::exists(path, ec)) {
    if (read_file(path) == document) return;
  }
  write_file_atomic(path, document);

  fs::path index_path = dir / kIndexFile;
  std::set<std::string> ids;
  if (fs::exists(index_path, ec)) {
    for (const auto& e : load_document(index_path)) ids.insert(e.get<std::string>());
  }
  if (ids.insert(id).second || !fs::exists(index_path, ec)) {
    ojson index = ojson::array();
    for (const auto& i : ids) index.push_back(i);
    write_file_atomic(index_path, dump_document(index));
  }
}

std::string Store::upsert(const PolicyEvent& event) {
  event.validate();
  write_record(event.event_id, kEvents, event.event_id, event.event_id,
               dump_document(to_json(event)));
  return event.event_id;
}

std::string Store::upsert(const Article& article) {
  article.validate();
  auto event = find_event(article.event_id);
  if (!event) throw ValidationError("Article: event_id '" + article.event_id + "' exists");
  if (!event->date_window.contains(article.published_at)) {
    throw ValidationError("Article: published_at inside the event date_window");
  }
  if (article.topic_id) require_topic(*event, *article.topic_id, "Article");
  write_record(article.event_id, kArticles, article.article_id, article.article_id,
               dump_document(to_json(article)));
  return article.article_id;
}

std::string Store::upsert(const Story& story) {
  story.validate();
  StoryKey key = StoryKey::parse(story.story_id);
  auto event = find_event(key.event_id);
  if (!event) throw ValidationError("Story: event '" + key.event_id + "' exists");
  require_topic(*event, key.topic_id, "Story");
  for (const auto& id : story.source_article_ids) {
    auto a = find_article(key.event_id, id);
    if (!a || a->year != key.year) {
      throw ValidationError("Story: source article '" + id +
                            "' resolves to an article of the same event and year");
    }
  }
  write_record(key.event_id, kStories, story.story_id, story_file_stem(key),
               dump_document(to_json(story)));
  return story.story_id;
}

std::string Store::upsert(const std::string& event_id, const GlossaryEntry& entry) {
  entry.validate();
  if (!find_event(event_id)) throw ValidationError("GlossaryEntry: event '" + event_id + "' exists");
  for (const auto& sid : entry.story_ids) {
    if (StoryKey::parse(sid).event_id != event_id || !find_story(sid)) {
      throw ValidationError("GlossaryEntry: story '" + sid + "' resolves within the event");
    }
  }
  std::string id = glossary_entry_id(entry.term);
  write_record(event_id, kGlossary, id, id, dump_document(to_json(entry)));
  return id;
}

std::vector<PolicyEvent> Store::list_events() const {
  std::vector<PolicyEvent> out;
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) return out;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    fs::path file = d / kEvents / (d.filename().string() + ".json");
    if (fs::exists(file, ec)) out.push_back(event_from_json(load_document(file)));
  }
  return out;
}

std::optional<PolicyEvent> Store::find_event(const std::string& event_id) const {
  if (!is_slug(event_id)) return std::nullopt;
  fs::path file = collection_dir(event_id, kEvents) / (event_id + ".json");
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  return event_from_json(load_document(file));
}

PolicyEvent Store::get_event(const std::string& event_id) const {
  auto e = find_event(event_id);
  if (!e) throw NotFoundError("unknown event '" + event_id + "'");
  return *e;
}

std::vector<Article> Store::list_articles(const std::string& event_id) const {
  std::vector<Article> out;
  for (const auto& f : record_files(collection_dir(event_id, kArticles))) {
    out.push_back(article_from_json(load_document(f)));
  }
  return out;
}

std::optional<Article> Store::find_article(const std::string& event_id,
                                           const std::string& article_id) const {
  if (!is_slug(event_id) || !is_slug(article_id)) return std::nullopt;
  fs::path file = collection_dir(event_id, kArticles) / (article_id + ".json");
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  return article_from_json(load_document(file));
}

std::vector<Story> Store::list_stories(const std::string& event_id) const {
  std::vector<Story> out;
  for (const auto& f : record_files(collection_dir(event_id, kStories))) {
    out.push_back(story_from_json(load_document(f)));
  }
  return out;
}

std::optional<Story> Store::find_story(const std::string& story_id) const {
  StoryKey key;
  try {
    key = StoryKey::parse(story_id);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  fs::path file = collection_dir(key.event_id, kStories) / (story_file_stem(key) + ".json");
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  return story_from_json(load_document(file));
}

std::vector<GlossaryEntry> Store::list_glossary(const std::string& event_id) const {
  std::vector<GlossaryEntry> out;
  for (const auto& f : record_files(collection_dir(event_id, kGlossary))) {
    out.push_back(glossary_entry_from_json(load_document(f)));
  }
  return out;
}

std::vector<Story> Store::query_stories(const std::string& event_id,
                                        const std::optional<std::string>& topic_id,
                                        const std::optional<int>& year, Order order) const {
  if (!find_event(event_id)) throw NotFoundError("unknown event '" + event_id + "'");
  std::vector<std::pair<StoryKey, Story>> hits;
  for (auto& s : list_stories(event_id)) {
    StoryKey key = StoryKey::parse(s.story_id);
    if (topic_id && key.topic_id != *topic_id) continue;
    if (year && key.year != *year) continue;
    hits.emplace_back(std::move(key), std::move(s));
  }
  std::stable_sort(hits.begin(), hits.end(), [order](const auto& a, const auto& b) {
    if (a.first.year != b.first.year) {
      return order == Order::chronological ? a.first.year < b.first.year
                                           : a.first.year > b.first.year;
    }
    return a.first.topic_id < b.first.topic_id;
  });
  std::vector<Story> out;
  for (auto& h : hits) out.push_back(std::move(h.second));
  return out;
}

std::vector<std::string> Store::check_integrity(const std::string& event_id) const {
  std::vector<std::string> problems;
  auto event = find_event(event_id);
  if (!event) return {"event '" + event_id + "' missing"};
  std::map<std::string, Article> articles;
  for (auto& a : list_articles(event_id)) {
    if (a.event_id != event_id) problems.push_back("article " + a.article_id + ": wrong event_id");
    if (a.topic_id && !event->taxonomy.contains(*a.topic_id)) {
      problems.push_back("article " + a.article_id + ": topic '" + *a.topic_id + "' not in taxonomy");
    }
    if (!event->date_window.contains(a.published_at)) {
      problems.push_back("article " + a.article_id + ": published_at outside the event window");
    }
    articles.emplace(a.article_id, std::move(a));
  }
  for (const auto& s : list_stories(event_id)) {
    StoryKey key = StoryKey::parse(s.story_id);
    if (s.batch_count != expected_batch_count(s.source_article_ids.size())) {
      problems.push_back("story " + s.story_id + ": batch_count mismatch");
    }
    for (const auto& id : s.source_article_ids) {
      auto it = articles.find(id);
      if (it == articles.end() || it->second.year != key.year) {
        problems.push_back("story " + s.story_id + ": source " + id + " does not resolve");
      }
    }
  }
  return problems;
}

std::string store_checksum(const fs::path& root) {
  std::vector<std::pair<std::string, fs::path>> files;
  std::error_code ec;
  if (fs::is_directory(root, ec)) {
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file()) {
        files.emplace_back(fs::relative(entry.path(), root).generic_string(), entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  std::string manifest;
  for (const auto& [rel, path] : files) {
    manifest += rel;
    manifest += '\t';
    manifest += sha256_hex(read_file(path));
    manifest += '\n';
  }
  return sha256_hex(manifest);
}

}  // namespace policystory::corpus
