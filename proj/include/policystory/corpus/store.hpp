#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "policystory/corpus/types.hpp"

namespace policystory::corpus {

enum class Order { chronological, reverse };

// File-backed document store:
//
//   {root}/{event_id}/{collection}/{file}.json   one document per record
//   {root}/{event_id}/{collection}/_index.json   sorted ids of the collection
//
// Collections are "events", "articles", "stories" and "glossary". Writes go
// through a temp file and rename. Upserting a record whose serialized bytes
// match the stored file touches nothing, so repeated runs leave the tree
// byte-identical. Writes are serialized by an internal mutex; reads take no
// lock.
class Store {
 public:
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Each upsert validates the record's own invariants plus referential
  // integrity against what is already stored (owning event, taxonomy,
  // source articles), then returns the record id.
  std::string upsert(const PolicyEvent& event);
  std::string upsert(const Article& article);
  std::string upsert(const Story& story);
  std::string upsert(const std::string& event_id, const GlossaryEntry& entry);

  std::vector<PolicyEvent> list_events() const;
  std::optional<PolicyEvent> find_event(const std::string& event_id) const;
  PolicyEvent get_event(const std::string& event_id) const;  // NotFoundError

  std::vector<Article> list_articles(const std::string& event_id) const;
  std::optional<Article> find_article(const std::string& event_id,
                                      const std::string& article_id) const;

  std::vector<Story> list_stories(const std::string& event_id) const;
  std::optional<Story> find_story(const std::string& story_id) const;

  std::vector<GlossaryEntry> list_glossary(const std::string& event_id) const;

  // Stories of an event, optionally narrowed to a topic and/or year, ordered
  // by year (then topic id). NotFoundError for an unknown event.
  std::vector<Story> query_stories(const std::string& event_id,
                                   const std::optional<std::string>& topic_id = std::nullopt,
                                   const std::optional<int>& year = std::nullopt,
                                   Order order = Order::chronological) const;

  // Referential-integrity violations for one event; empty when consistent.
  std::vector<std::string> check_integrity(const std::string& event_id) const;

 private:
  std::filesystem::path collection_dir(const std::string& event_id,
                                       const std::string& collection) const;
  void write_record(const std::string& event_id, const std::string& collection,
                    const std::string& id, const std::string& file_stem,
                    const std::string& document);

  std::filesystem::path root_;
  std::mutex write_mutex_;
};

std::string glossary_entry_id(const std::string& term);

// SHA-256 over every file under root (sorted relative paths and contents).
// Missing root hashes as the empty tree.
std::string store_checksum(const std::filesystem::path& root);

}  // namespace policystory::corpus
