#include "support.hpp"

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "policystory/classify/presets.hpp"
#include "policystory/llm/mock_backend.hpp"
#include "policystory/util/decimal.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/url.hpp"

namespace fs = std::filesystem;
using namespace policystory;

namespace testsupport {

fs::path source_dir() { return POLICYSTORY_SOURCE_DIR; }
fs::path cli_path() { return POLICYSTORY_CLI_PATH; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(stamp) + "-" + std::to_string(rd()) + "-" +
           std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  if (!std::getenv("PS_KEEP_TMP")) fs::remove_all(path_, ec);
}

llm::BackendReply RecordingBackend::send(const llm::ChatRequest& request) {
  {
    std::lock_guard lock(mutex_);
    requests_.push_back(request);
  }
  return {200, llm::MockBackend::respond(request), ""};
}

std::vector<llm::ChatRequest> RecordingBackend::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::vector<llm::ChatRequest> RecordingBackend::requests_for(const std::string& task) const {
  std::vector<llm::ChatRequest> out;
  for (auto& r : requests()) {
    if (llm::prompt_task(r.system_prompt) == task) out.push_back(r);
  }
  return out;
}

ScriptedBackend::ScriptedBackend(std::deque<llm::BackendReply> replies, llm::BackendReply fallback)
    : replies_(std::move(replies)), fallback_(std::move(fallback)) {}

llm::BackendReply ScriptedBackend::send(const llm::ChatRequest& request) {
  std::lock_guard lock(mutex_);
  requests_.push_back(request);
  if (replies_.empty()) return fallback_;
  auto r = replies_.front();
  replies_.pop_front();
  return r;
}

std::vector<llm::ChatRequest> ScriptedBackend::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::unique_ptr<llm::Gateway> make_gateway(std::shared_ptr<llm::ChatBackend> backend,
                                           std::optional<fs::path> log) {
  llm::GatewayOptions o;
  o.retry.sleep = [](std::chrono::milliseconds) {};
  o.log_path = std::move(log);
  o.log_prompts = true;
  return std::make_unique<llm::Gateway>(std::move(backend), std::move(o));
}

void build_api_fixture_store(const fs::path& root) {
  corpus::Store store(root);
  for (const auto& id : classify::preset_ids()) {
    auto e = *classify::preset_event(id);
    e.date_window = {Date::parse("2019-01-01"), Date::parse("2024-12-31")};
    store.upsert(e);
  }
  const char* budgets[] = {"3.05", "3.18", "4.71", "5.25", "5.94", "6.21"};
  for (int year = 2019; year <= 2024; ++year) {
    std::string amount = std::string("INR ") + budgets[year - 2019] + " lakh crore";
    corpus::Article a;
    a.url = "https://example.in/defence-" + std::to_string(year);
    a.article_id = article_id_for_url(a.url);
    a.title = "Defence outlay for " + std::to_string(year);
    a.published_at = Date::parse(std::to_string(year) + "-02-01");
    a.first_paragraph = "The defense budget of " + amount + " was presented in Parliament.";
    a.body = a.first_paragraph +
             "\n\nAnalysts said the increase covers pay, pensions and new equipment for the "
             "armed forces. The capital outlay funds aircraft, ships and border roads over "
             "several years.";
    a.event_id = "union-budget";
    a.year = year;
    a.topic_id = "defense";
    a.article_summary = a.first_paragraph;
    store.upsert(a);

    corpus::Story s;
    s.story_id = corpus::StoryKey{"union-budget", "defense", year}.id();
    s.l2_text = "This story follows Defense through " + std::to_string(year) + ".\n\n" +
                std::to_string(year) + "-02-01: The defense budget of " + amount +
                " was presented in Parliament. The fiscal deficit shaped the outlay.";
    s.l1_text = "Defense spending in " + std::to_string(year) + " reached " + amount + ".";
    corpus::NumericFact f;
    f.key = "Defense Budget";
    f.raw_value = amount;
    f.normalized_value = Decimal::parse(budgets[year - 2019]).scaled_by_pow10(12);
    f.unit = corpus::Unit::inr();
    s.numeric_facts = {f};
    s.source_article_ids = {a.article_id};
    s.batch_count = 1;
    s.generated_at = "2025-01-01T00:00:00Z";
    s.generator = "fixture";
    if (year == 2023) {
      s.glossary = {{"fiscal deficit", "The gap between what the government spends and earns.",
                     {s.story_id}}};
    }
    store.upsert(s);
  }
  store.upsert("union-budget",
               corpus::GlossaryEntry{"MSP", "Minimum support price: the floor price for crops.",
                                     {"union-budget/defense/2019"}});
  store.upsert("union-budget",
               corpus::GlossaryEntry{"fiscal deficit",
                                     "The gap between what the government spends and earns.",
                                     {"union-budget/defense/2023"}});
}

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

fs::path write_mini_config(const fs::path& dir) {
  auto fixtures = source_dir() / "fixtures";
  std::string text = read_file(fixtures / "mini.toml");
  replace_all(text, "\"mini/out/store\"", "\"" + (dir / "store").string() + "\"");
  replace_all(text, "\"mini/out/work\"", "\"" + (dir / "work").string() + "\"");
  replace_all(text, "\"mini/search\"", "\"" + (fixtures / "mini" / "search").string() + "\"");
  replace_all(text, "\"mini/pages\"", "\"" + (fixtures / "mini" / "pages").string() + "\"");
  auto path = dir / "mini.toml";
  write_file_atomic(path, text);
  return path;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

CliRun run_cli(const std::vector<std::string>& args) {
  TempDir tmp("ps-cli");
  auto out_file = tmp / "out.txt";
  std::string cmd = shell_quote(cli_path().string());
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(out_file.string()) + " 2>&1";
  int rc = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::error_code ec;
  if (fs::exists(out_file, ec)) r.output = read_file(out_file);
  return r;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace testsupport

#include "policystory/util/json_schema.hpp"

namespace testsupport {

std::vector<CrawlHit> crawl_api(const api::Snapshot& snapshot) {
  std::vector<CrawlHit> hits;
  auto get = [&](const std::string& path, std::map<std::string, std::string> query, const std::string& schema) {
    api::ApiRequest req{"GET", path, query};
    hits.push_back({path, query, api::handle(snapshot, req), schema});
    return hits.back().response;
  };
  auto events = get("/api/events", {}, "events");
  for (const auto& e : events.body) {
    std::string base = "/api/events/" + e["event_id"].get<std::string>();
    get(base + "/glossary", {}, "glossary");
    auto topics = get(base + "/topics", {}, "topics");
    for (const auto& t : topics.body["topics"]) {
      std::string stories = base + "/topics/" + t["topic_id"].get<std::string>() + "/stories";
      for (std::string level : {"", "l1", "l2", "numeric"}) {
        for (std::string order : {"", "asc", "desc"}) {
          std::map<std::string, std::string> q;
          if (!level.empty()) q["level"] = level;
          if (!order.empty()) q["order"] = order;
          get(stories, q, "stories_" + (level.empty() ? std::string("l1") : level));
        }
      }
    }
    get(base + "/topics/no-such-topic/stories", {}, "error");
    get(base + "/topics/" + topics.body["topics"][0]["topic_id"].get<std::string>() + "/stories",
        {{"level", "xyz"}}, "error");
    get(base + "/topics/" + topics.body["topics"][0]["topic_id"].get<std::string>() + "/stories",
        {{"order", "sideways"}}, "error");
  }
  get("/api/events/no-such-event/topics", {}, "error");
  get("/api/events/no-such-event/glossary", {}, "error");
  get("/api/nothing-here", {}, "error");
  return hits;
}

std::vector<std::string> validate_hit(const CrawlHit& hit) {
  static std::map<std::string, nlohmann::json> cache;
  static std::mutex m;
  nlohmann::json schema;
  {
    std::lock_guard lock(m);
    auto it = cache.find(hit.schema);
    if (it == cache.end()) {
      it = cache.emplace(hit.schema, nlohmann::json::parse(read_file(
                                         source_dir() / "schemas" / "api" / (hit.schema + ".schema.json"))))
               .first;
    }
    schema = it->second;
  }
  return validate_json(schema, nlohmann::json::parse(hit.response.body.dump()));
}

}  // namespace testsupport
