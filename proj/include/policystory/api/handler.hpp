#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "policystory/corpus/types.hpp"

namespace policystory::api {

// Everything the API serves, read once from the store. Never mutated after
// load; a reload builds a fresh snapshot.
struct Snapshot {
  bool available = false;
  std::string load_error;
  std::vector<corpus::PolicyEvent> events;  // sorted by event_id
  std::map<std::string, std::vector<corpus::Story>> stories;  // by event, year ascending
  std::map<std::string, std::vector<corpus::GlossaryEntry>> glossary;

  static std::shared_ptr<const Snapshot> load(const std::filesystem::path& store_root);
  const corpus::PolicyEvent* event(const std::string& event_id) const;
};

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
};

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

// Routes:
//   GET /api/events
//   GET /api/events/{event_id}/topics
//   GET /api/events/{event_id}/topics/{topic_id}/stories?level=l1|l2|numeric&order=asc|desc
//   GET /api/events/{event_id}/glossary
// Errors are {status, code, message} with status 400, 404 or 500.
ApiResponse handle(const Snapshot& snapshot, const ApiRequest& request);

nlohmann::ordered_json error_body(int status, const std::string& code, const std::string& message);

}  // namespace policystory::api
