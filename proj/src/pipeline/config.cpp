#include "policystory/pipeline/config.hpp"

#include <cstdlib>
#include <sstream>

#include <toml.hpp>

#include "policystory/classify/presets.hpp"
#include "policystory/ingestion/query.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/hash.hpp"
#include "policystory/util/json_schema.hpp"

namespace policystory::pipeline {

namespace detail {
std::string_view config_schema_text();
}

using nlohmann::json;

namespace {

json node_to_json(const toml::node& node) {
  if (auto t = node.as_table()) {
    json out = json::object();
    for (const auto& [k, v] : *t) out[std::string(k.str())] = node_to_json(v);
    return out;
  }
  if (auto a = node.as_array()) {
    json out = json::array();
    for (const auto& v : *a) out.push_back(node_to_json(v));
    return out;
  }
  if (auto s = node.as_string()) return s->get();
  if (auto i = node.as_integer()) return i->get();
  if (auto d = node.as_floating_point()) return d->get();
  if (auto b = node.as_boolean()) return b->get();
  // dates and times keep their TOML spelling
  std::ostringstream os;
  if (auto d = node.as_date()) {
    os << d->get();
  } else if (auto dt = node.as_date_time()) {
    os << dt->get();
  } else if (auto tm = node.as_time()) {
    os << tm->get();
  }
  return os.str();
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

int env_int(const char* name, int fallback) {
  auto v = env(name);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    int n = std::stoi(*v, &used);
    if (used != v->size() || n < 1) throw std::invalid_argument(*v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + " must be a positive integer, got '" + *v + "'");
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : it->get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

SourceMode mode_of(const json& obj) {
  return get_or<std::string>(obj, "mode", "replay") == "http" ? SourceMode::http : SourceMode::replay;
}

corpus::PolicyEvent event_from_json(const json& e) {
  corpus::PolicyEvent event;
  if (e.contains("preset")) {
    auto preset = classify::preset_event(e["preset"].get<std::string>());
    if (!preset) throw ConfigError("unknown event preset " + e["preset"].dump());
    event = *preset;
  }
  event.event_id = get_or<std::string>(e, "event_id", event.event_id);
  event.name = get_or<std::string>(e, "name", event.name);
  if (e.contains("query")) {
    try {
      event.query = ingestion::parse_query(e["query"].get<std::string>());
    } catch (const Error& err) {
      throw ConfigError("event " + event.event_id + ": query: " + err.what());
    }
  }
  if (e.contains("date_window")) {
    try {
      event.date_window = {Date::parse(e["date_window"]["start"].get<std::string>()),
                           Date::parse(e["date_window"]["end"].get<std::string>())};
    } catch (const Error& err) {
      throw ConfigError("event " + event.event_id + ": date_window: " + err.what());
    }
  }
  event.per_year_cap = get_or<int>(e, "per_year_cap", event.per_year_cap);
  if (e.contains("topics")) {
    event.taxonomy.topics.clear();
    for (const auto& t : e["topics"]) {
      event.taxonomy.topics.push_back({t["topic_id"].get<std::string>(),
                                       t["label"].get<std::string>(),
                                       t["description"].get<std::string>()});
    }
  }
  event.taxonomy.fallback_topic_id =
      get_or<std::string>(e, "fallback_topic_id", event.taxonomy.fallback_topic_id);
  try {
    event.validate();
  } catch (const Error& err) {
    throw ConfigError("event " + event.event_id + ": " + err.what());
  }
  return event;
}

}  // namespace

const corpus::PolicyEvent* Config::event(const std::string& event_id) const {
  for (const auto& e : events) {
    if (e.event_id == event_id) return &e;
  }
  return nullptr;
}

json toml_to_json(const std::string& toml_text) {
  try {
    return node_to_json(toml::parse(toml_text));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML syntax error at line " << e.source().begin.line << ", column "
       << e.source().begin.column << ": " << e.description();
    throw ConfigError(os.str());
  }
}

const json& config_schema() {
  static const json schema = json::parse(detail::config_schema_text());
  return schema;
}

Config config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  auto problems = validate_json(config_schema(), doc);
  if (!problems.empty()) {
    std::string msg = "config does not match schema:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }

  Config c;
  const auto& run = doc["run"];
  c.store = resolve(base_dir, run["store"].get<std::string>());
  c.work_dir = run.contains("work_dir") ? resolve(base_dir, run["work_dir"].get<std::string>())
                                        : c.store.parent_path() / "work";
  c.seed = get_or<std::uint64_t>(run, "seed", 0);
  if (run.contains("clock")) c.clock = run["clock"].get<std::string>();

  const json none = json::object();
  const auto& search = doc.value("search", none);
  c.search.mode = mode_of(search);
  c.search.replay_dir = resolve(base_dir, get_or<std::string>(search, "replay_dir", "search"));
  c.search.base_url = get_or<std::string>(search, "base_url", "");
  c.search.page_limit = get_or<std::size_t>(search, "page_limit", 1000);
  if (c.search.mode == SourceMode::http && c.search.base_url.empty()) {
    throw ConfigError("search.base_url is required when search.mode = \"http\"");
  }

  const auto& fetch = doc.value("fetch", none);
  c.fetch.mode = mode_of(fetch);
  c.fetch.replay_dir = resolve(base_dir, get_or<std::string>(fetch, "replay_dir", "pages"));
  c.fetch.workers = get_or<std::size_t>(fetch, "workers", c.fetch.workers);
  c.fetch.per_host_concurrency = get_or<std::size_t>(fetch, "per_host_concurrency", c.fetch.per_host_concurrency);
  c.fetch.per_host_delay_ms = get_or<int>(fetch, "per_host_delay_ms", c.fetch.per_host_delay_ms);
  c.fetch.timeout_s = get_or<int>(fetch, "timeout_s", c.fetch.timeout_s);
  c.fetch.user_agent = get_or<std::string>(fetch, "user_agent", c.fetch.user_agent);

  const auto& llm = doc.value("llm", none);
  auto& L = c.llm;
  L.backend = get_or<std::string>(llm, "backend", L.backend);
  L.base_url = get_or<std::string>(llm, "base_url", L.base_url);
  L.model = get_or<std::string>(llm, "model", L.model);
  L.concurrency = get_or<std::size_t>(llm, "concurrency", L.concurrency);
  L.max_attempts = get_or<int>(llm, "max_attempts", L.max_attempts);
  L.base_delay_ms = get_or<int>(llm, "base_delay_ms", L.base_delay_ms);
  L.max_delay_ms = get_or<int>(llm, "max_delay_ms", L.max_delay_ms);
  L.timeout_s = get_or<int>(llm, "timeout_s", L.timeout_s);
  L.context_limit = get_or<int>(llm, "context_limit", L.context_limit);
  L.reserve_fraction = get_or<double>(llm, "reserve_fraction", L.reserve_fraction);
  if (llm.contains("prompts_dir")) L.prompts_dir = resolve(base_dir, llm["prompts_dir"].get<std::string>());
  if (llm.contains("request_log")) L.request_log = resolve(base_dir, llm["request_log"].get<std::string>());
  L.log_prompts = get_or<bool>(llm, "log_prompts", false);

  const auto& api = doc.value("api", none);
  c.api.host = get_or<std::string>(api, "host", c.api.host);
  c.api.port = get_or<int>(api, "port", c.api.port);
  c.api.cors_origin = get_or<std::string>(api, "cors_origin", c.api.cors_origin);
  if (api.contains("access_log")) c.api.access_log = resolve(base_dir, api["access_log"].get<std::string>());

  for (const auto& e : doc["events"]) {
    auto event = event_from_json(e);
    if (c.event(event.event_id)) throw ConfigError("duplicate event_id " + event.event_id);
    c.events.push_back(std::move(event));
  }

  // hash before environment overrides so secrets never feed it
  c.hash = sha256_hex(doc.dump()).substr(0, 16);

  if (auto v = env("POLICYSTORY_LLM_BASE_URL")) L.base_url = *v;
  if (auto v = env("POLICYSTORY_LLM_MODEL")) L.model = *v;
  if (auto v = env("POLICYSTORY_LLM_API_KEY")) L.api_key = *v;
  L.concurrency = static_cast<std::size_t>(
      env_int("POLICYSTORY_LLM_CONCURRENCY", static_cast<int>(L.concurrency)));
  L.max_attempts = env_int("POLICYSTORY_LLM_MAX_ATTEMPTS", L.max_attempts);
  if (L.backend == "http" && L.base_url.empty()) {
    throw ConfigError("llm.base_url (or POLICYSTORY_LLM_BASE_URL) is required for the http backend");
  }
  if (L.max_delay_ms < L.base_delay_ms) throw ConfigError("llm.max_delay_ms < llm.base_delay_ms");
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.what());
  }
  auto doc = toml_to_json(text);
  auto base = std::filesystem::absolute(path).parent_path();
  auto c = config_from_json(doc, base);
  c.source = path;
  return c;
}

}  // namespace policystory::pipeline
