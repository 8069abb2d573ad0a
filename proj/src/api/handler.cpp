#include "policystory/api/handler.hpp"

#include <algorithm>

#include "policystory/corpus/json.hpp"
#include "policystory/corpus/store.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::api {

using ojson = nlohmann::ordered_json;

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message) {
  return {status, error_body(status, code, message)};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

ojson events_view(const Snapshot& snap) {
  ojson out = ojson::array();
  for (const auto& e : snap.events) {
    out.push_back({{"event_id", e.event_id},
                   {"name", e.name},
                   {"date_window", {{"start", e.date_window.start.iso()}, {"end", e.date_window.end.iso()}}},
                   {"topic_count", e.taxonomy.substantive().size()}});
  }
  return out;
}

const std::vector<corpus::Story>& stories_of(const Snapshot& snap, const std::string& event_id) {
  static const std::vector<corpus::Story> kNone;
  auto it = snap.stories.find(event_id);
  return it == snap.stories.end() ? kNone : it->second;
}

int story_year(const corpus::Story& s) { return corpus::StoryKey::parse(s.story_id).year; }
std::string story_topic(const corpus::Story& s) { return corpus::StoryKey::parse(s.story_id).topic_id; }

ojson topics_view(const Snapshot& snap, const corpus::PolicyEvent& event) {
  std::map<std::string, std::vector<int>> years;
  for (const auto& s : stories_of(snap, event.event_id)) years[story_topic(s)].push_back(story_year(s));

  ojson topics = ojson::array();
  for (const auto& t : event.taxonomy.topics) {
    const auto& ys = years[t.topic_id];
    if (t.topic_id == event.taxonomy.fallback_topic_id && ys.empty()) continue;
    topics.push_back({{"topic_id", t.topic_id},
                      {"label", t.label},
                      {"description", t.description},
                      {"fallback", t.topic_id == event.taxonomy.fallback_topic_id},
                      {"years", ys}});
  }
  return {{"event_id", event.event_id}, {"name", event.name}, {"topics", topics}};
}

ojson glossary_entry_view(const corpus::GlossaryEntry& g) {
  return {{"term", g.term}, {"definition", g.definition}, {"story_ids", g.story_ids}};
}

ojson story_view(const corpus::Story& s, const std::string& level) {
  ojson v{{"story_id", s.story_id}, {"year", story_year(s)}};
  if (level == "l1") {
    v["l1_text"] = s.l1_text;
  } else if (level == "l2") {
    v["l2_text"] = s.l2_text;
    ojson g = ojson::array();
    for (const auto& e : s.glossary) g.push_back(glossary_entry_view(e));
    v["glossary"] = g;
  } else {
    ojson facts = ojson::array();
    for (const auto& f : s.numeric_facts) facts.push_back(corpus::to_json(f));
    v["numeric_facts"] = facts;
  }
  return v;
}

std::string query_param(const ApiRequest& r, const std::string& name, const std::string& fallback) {
  auto it = r.query.find(name);
  return it == r.query.end() || it->second.empty() ? fallback : it->second;
}

}  // namespace

ojson error_body(int status, const std::string& code, const std::string& message) {
  return {{"status", status}, {"code", code}, {"message", message}};
}

std::shared_ptr<const Snapshot> Snapshot::load(const std::filesystem::path& store_root) {
  auto snap = std::make_shared<Snapshot>();
  std::error_code ec;
  if (!std::filesystem::is_directory(store_root, ec)) {
    snap->load_error = "store directory " + store_root.string() + " is missing";
    return snap;
  }
  try {
    corpus::Store store(store_root);
    snap->events = store.list_events();
    std::sort(snap->events.begin(), snap->events.end(),
              [](const auto& a, const auto& b) { return a.event_id < b.event_id; });
    for (const auto& e : snap->events) {
      snap->stories[e.event_id] = store.query_stories(e.event_id);
      auto g = store.list_glossary(e.event_id);
      std::stable_sort(g.begin(), g.end(), [](const auto& a, const auto& b) {
        auto la = text::to_lower(a.term), lb = text::to_lower(b.term);
        return la != lb ? la < lb : a.term < b.term;
      });
      snap->glossary[e.event_id] = std::move(g);
    }
    snap->available = true;
  } catch (const std::exception& e) {
    snap->events.clear();
    snap->stories.clear();
    snap->glossary.clear();
    snap->load_error = e.what();
  }
  return snap;
}

const corpus::PolicyEvent* Snapshot::event(const std::string& event_id) const {
  for (const auto& e : events) {
    if (e.event_id == event_id) return &e;
  }
  return nullptr;
}

ApiResponse handle(const Snapshot& snap, const ApiRequest& request) {
  const auto parts = split_path(request.path);
  if (parts.empty() || parts[0] != "api" || parts.size() < 2 || parts[1] != "events") {
    return error(404, "not_found", "no such endpoint: " + request.path);
  }
  if (request.method != "GET") {
    return error(404, "not_found", request.method + " is not served; the API is read-only");
  }
  if (!snap.available) return error(500, "store_unavailable", snap.load_error);

  if (parts.size() == 2) return {200, events_view(snap)};

  const auto* event = snap.event(parts[2]);
  auto event_missing = [&] { return error(404, "event_not_found", "unknown event '" + parts[2] + "'"); };

  if (parts.size() == 4 && parts[3] == "topics") {
    if (!event) return event_missing();
    return {200, topics_view(snap, *event)};
  }
  if (parts.size() == 4 && parts[3] == "glossary") {
    if (!event) return event_missing();
    ojson out = ojson::array();
    for (const auto& g : snap.glossary.at(event->event_id)) out.push_back(glossary_entry_view(g));
    return {200, out};
  }
  if (parts.size() == 6 && parts[3] == "topics" && parts[5] == "stories") {
    if (!event) return event_missing();
    const auto& topic_id = parts[4];
    if (!event->taxonomy.contains(topic_id)) {
      return error(404, "topic_not_found",
                   "unknown topic '" + topic_id + "' for event '" + event->event_id + "'");
    }
    const auto level = query_param(request, "level", "l1");
    if (level != "l1" && level != "l2" && level != "numeric") {
      return error(400, "bad_level", "level must be l1, l2 or numeric, got '" + level + "'");
    }
    const auto order = query_param(request, "order", "asc");
    if (order != "asc" && order != "desc") {
      return error(400, "bad_order", "order must be asc or desc, got '" + order + "'");
    }
    std::vector<const corpus::Story*> picked;
    for (const auto& s : stories_of(snap, event->event_id)) {
      if (story_topic(s) == topic_id) picked.push_back(&s);
    }
    std::stable_sort(picked.begin(), picked.end(),
                     [](const auto* a, const auto* b) { return story_year(*a) < story_year(*b); });
    if (order == "desc") std::reverse(picked.begin(), picked.end());
    ojson out = ojson::array();
    for (const auto* s : picked) out.push_back(story_view(*s, level));
    return {200, out};
  }
  return error(404, "not_found", "no such endpoint: " + request.path);
}

}  // namespace policystory::api
