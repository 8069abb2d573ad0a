#include "policystory/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "policystory/classify/classify.hpp"
#include "policystory/ingestion/extract.hpp"
#include "policystory/ingestion/sampling.hpp"
#include "policystory/llm/mock_backend.hpp"
#include "policystory/numeric/extract.hpp"
#include "policystory/summarize/article.hpp"
#include "policystory/summarize/glossary.hpp"
#include "policystory/summarize/story.hpp"
#include "policystory/util/date.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/hash.hpp"
#include "policystory/util/url.hpp"

namespace policystory::pipeline {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
}

std::string retry_hint(const std::string& what) {
  return what + " (is the backend reachable? completed work is kept; re-run the same command to resume)";
}

bool is_unreachable(const std::exception& e) {
  auto* t = dynamic_cast<const TransportError*>(&e);
  return t && t->status() == 0;
}

void write_json_if_changed(const std::filesystem::path& path, const ordered_json& j) {
  std::string text = j.dump(2) + "\n";
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && read_file(path) == text) return;
  write_file_atomic(path, text);
}

std::string file_key(std::string id) {
  std::replace(id.begin(), id.end(), '/', '.');
  return id;
}

struct Group {
  std::string topic_id;
  int year = 0;
  std::vector<corpus::Article> articles;  // publication order
};

std::vector<Group> story_groups(const corpus::PolicyEvent& event,
                                const std::vector<corpus::Article>& articles) {
  std::map<std::pair<std::string, int>, std::vector<corpus::Article>> by_key;
  for (const auto& a : articles) {
    if (!a.topic_id || *a.topic_id == event.taxonomy.fallback_topic_id) continue;
    by_key[{*a.topic_id, a.year}].push_back(a);
  }
  std::vector<Group> groups;
  // taxonomy order, then year
  for (const auto& t : event.taxonomy.topics) {
    for (auto& [key, list] : by_key) {
      if (key.first != t.topic_id) continue;
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        return a.published_at != b.published_at ? a.published_at < b.published_at
                                                 : a.article_id < b.article_id;
      });
      groups.push_back({key.first, key.second, std::move(list)});
    }
  }
  return groups;
}

}  // namespace

Pipeline::Pipeline(Config config, RunOptions options)
    : config_(std::move(config)),
      options_(std::move(options)),
      seed_(options_.seed.value_or(config_.seed)),
      store_(config_.store) {
  if (auto m = Manifest::load(config_.manifest_path())) {
    manifest_ = std::move(*m);
    if (manifest_.config_hash != config_.hash) {
      say("note: config changed since the manifest was written; completed work is still skipped by id");
    }
  }
  manifest_.config_hash = config_.hash;
  manifest_.seed = seed_;
  manifest_.run_id = sha256_hex(config_.hash + "/" + std::to_string(seed_)).substr(0, 12);
}

std::uint64_t Pipeline::derive_seed(std::uint64_t seed, const std::string& scope) {
  auto h = sha256_hex(std::to_string(seed) + "/" + scope);
  return std::stoull(h.substr(0, 16), nullptr, 16);
}

void Pipeline::say(const std::string& line) const {
  if (options_.out) *options_.out << line << '\n';
}

std::string Pipeline::now() const { return config_.clock.value_or(utc_now_iso()); }

std::filesystem::path Pipeline::refs_path(const std::string& event_id) const {
  return config_.work_dir / "refs" / (event_id + ".json");
}
std::filesystem::path Pipeline::failed_path(const std::string& event_id) const {
  return config_.work_dir / "failed" / (event_id + ".json");
}
std::filesystem::path Pipeline::fold_path(const std::string& story_id) const {
  return config_.work_dir / "folds" / (file_key(story_id) + ".json");
}

llm::Gateway& Pipeline::gateway() {
  if (!gateway_) {
    std::shared_ptr<llm::ChatBackend> backend = options_.backend;
    if (!backend) {
      if (config_.llm.backend == "mock") {
        backend = std::make_shared<llm::MockBackend>();
      } else {
        llm::HttpBackendOptions o;
        o.base_url = config_.llm.base_url;
        o.model = config_.llm.model;
        if (!config_.llm.api_key.empty()) o.api_key = config_.llm.api_key;
        o.timeout = std::chrono::seconds(config_.llm.timeout_s);
        backend = std::make_shared<llm::HttpChatBackend>(o);
      }
    }
    llm::GatewayOptions g;
    g.budget = llm::TokenBudget::with_reserve_fraction(config_.llm.context_limit,
                                                       config_.llm.reserve_fraction);
    g.retry.max_attempts = config_.llm.max_attempts;
    g.retry.base_delay = std::chrono::milliseconds(config_.llm.base_delay_ms);
    g.retry.max_delay = std::chrono::milliseconds(config_.llm.max_delay_ms);
    g.concurrency = config_.llm.concurrency;
    g.log_path = config_.llm.request_log.value_or(config_.work_dir / "requests.jsonl");
    g.log_prompts = config_.llm.log_prompts;
    gateway_ = std::make_unique<llm::Gateway>(backend, g);
  }
  return *gateway_;
}

const llm::PromptLibrary& Pipeline::prompts() {
  if (!prompts_) {
    prompts_ = config_.llm.prompts_dir ? llm::PromptLibrary::load(*config_.llm.prompts_dir)
                                       : llm::PromptLibrary::builtin();
  }
  return *prompts_;
}

std::size_t Pipeline::gateway_calls() const { return gateway_ ? gateway_->calls() : 0; }

std::string Pipeline::generator() const {
  std::string backend = options_.backend ? options_.backend->name()
                        : config_.llm.backend == "mock" ? "mock"
                                                        : "http:" + config_.llm.model;
  auto& self = const_cast<Pipeline&>(*this);
  return backend + "+prompts:" + self.prompts().hash();
}

std::unique_ptr<ingestion::SearchClient> Pipeline::make_search_client() const {
  if (config_.search.mode == SourceMode::replay) {
    return std::make_unique<ingestion::ReplaySearchClient>(config_.search.replay_dir);
  }
  RetryPolicy retry;
  retry.max_attempts = config_.llm.max_attempts;
  return std::make_unique<ingestion::HttpSearchClient>(config_.search.base_url, retry);
}

void Pipeline::require_stage(Stage needed, const std::string& what) const {
  if (manifest_.stage < needed) throw PreconditionError("stage precondition: " + what + " incomplete");
}

void Pipeline::refresh_counters() {
  auto& c = manifest_.counters;
  c.extracted = c.classified = c.fallback = c.summarized = c.stories_built = 0;
  std::int64_t final_failed = 0;
  for (const auto& event : config_.events) {
    for (const auto& a : store_.list_articles(event.event_id)) {
      ++c.extracted;
      if (a.topic_id) ++c.classified;
      if (a.topic_id == event.taxonomy.fallback_topic_id) ++c.fallback;
      if (a.article_summary) ++c.summarized;
    }
    c.stories_built += static_cast<std::int64_t>(store_.list_stories(event.event_id).size());
    std::error_code ec;
    if (std::filesystem::exists(failed_path(event.event_id), ec)) {
      auto j = json::parse(read_file(failed_path(event.event_id)));
      final_failed += static_cast<std::int64_t>(j["failures"].size());
    }
  }
  c.failed = final_failed;
  c.fetched = c.extracted + c.failed;
  c.numeric_stories = static_cast<std::int64_t>(manifest_.numeric_done.size());
}

StageResult Pipeline::finish(Stage stage, StageResult result) {
  if (options_.dry_run) return result;
  refresh_counters();
  if (result.failures.empty()) {
    manifest_.advance(stage);
  } else {
    result.exit_code = kExitPartial;
  }
  manifest_.failures = result.failures;
  manifest_.save(config_.manifest_path());
  return result;
}

// ---- ingest ---------------------------------------------------------------

StageResult Pipeline::ingest() {
  StageResult result;
  for (const auto& event : config_.events) {
    auto query = ingestion::build_query(event);
    const auto path = refs_path(event.event_id);
    std::error_code ec;
    const bool cached = std::filesystem::exists(path, ec);
    if (options_.dry_run) {
      say("ingest " + event.event_id + ": " + query.rendered + " over " +
          event.date_window.start.iso() + ".." + event.date_window.end.iso() +
          (cached ? " (cached, skipped)" : ""));
      continue;
    }
    store_.upsert(event);
    if (cached) continue;
    try {
      auto client = make_search_client();
      ingestion::SearchOptions so;
      so.page_limit = config_.search.page_limit;
      auto refs = ingestion::search(query, event.date_window, *client, so);
      ordered_json j;
      j["event_id"] = event.event_id;
      j["query"] = query.rendered;
      j["date_window"] = {{"start", event.date_window.start.iso()}, {"end", event.date_window.end.iso()}};
      j["results"] = ordered_json::array();
      for (const auto& r : refs) {
        ordered_json o{{"url", r.url}, {"publish_date", r.published_at.iso()}};
        if (r.title) o["title"] = *r.title;
        if (r.source_outlet) o["media_name"] = *r.source_outlet;
        j["results"].push_back(o);
      }
      write_json_if_changed(path, j);
      say("ingest " + event.event_id + ": " + std::to_string(refs.size()) + " refs");
    } catch (const Error& e) {
      result.failures.push_back("ingest " + event.event_id + ": " + e.what());
    }
  }
  if (!options_.dry_run) {
    manifest_.counters.search_refs = 0;
    for (const auto& event : config_.events) {
      std::error_code ec;
      if (!std::filesystem::exists(refs_path(event.event_id), ec)) continue;
      auto page = ingestion::decode_search_page(read_file(refs_path(event.event_id)), event.event_id);
      manifest_.counters.search_refs += static_cast<std::int64_t>(page.results.size());
    }
  }
  return finish(Stage::ingest, std::move(result));
}

// ---- sample ---------------------------------------------------------------

StageResult Pipeline::sample() {
  require_stage(Stage::ingest, "ingest");
  StageResult result;
  std::unique_ptr<ingestion::PageFetcher> fetcher;
  if (config_.fetch.mode == SourceMode::replay) {
    fetcher = std::make_unique<ingestion::ReplayPageFetcher>(config_.fetch.replay_dir);
  } else {
    ingestion::HttpFetchOptions o;
    o.per_host_concurrency = config_.fetch.per_host_concurrency;
    o.per_host_delay = std::chrono::milliseconds(config_.fetch.per_host_delay_ms);
    o.timeout = std::chrono::seconds(config_.fetch.timeout_s);
    o.user_agent = config_.fetch.user_agent;
    fetcher = std::make_unique<ingestion::HttpPageFetcher>(o);
  }

  std::int64_t sampled = 0;
  for (const auto& event : config_.events) {
    auto page = ingestion::decode_search_page(read_file(refs_path(event.event_id)), event.event_id);
    ordered_json reports = ordered_json::array();
    std::vector<ingestion::ArticleRef> selected;
    for (int year = event.date_window.start.year; year <= event.date_window.end.year; ++year) {
      std::vector<ingestion::ArticleRef> in_year;
      for (const auto& ref : page.results) {
        if (ref.published_at.year == year) in_year.push_back(ref);
      }
      auto sr = ingestion::stratified_sample(in_year, year, event.per_year_cap,
                                             derive_seed(seed_, event.event_id + "/" + std::to_string(year)));
      const auto& r = sr.report;
      reports.push_back({{"year", r.year},
                         {"requested_cap", r.requested_cap},
                         {"achieved_total", r.achieved_total},
                         {"month_counts", r.month_counts},
                         {"shortfall_months", r.shortfall_months}});
      selected.insert(selected.end(), sr.selected.begin(), sr.selected.end());
      if (options_.dry_run && r.achieved_total > 0) {
        say("sample " + event.event_id + " " + std::to_string(year) + ": " +
            std::to_string(r.achieved_total) + " of cap " + std::to_string(r.requested_cap));
      }
    }
    sampled += static_cast<std::int64_t>(selected.size());

    // already stored or already failed for good: nothing to fetch
    std::map<std::string, std::string> failed;
    std::error_code ec;
    if (std::filesystem::exists(failed_path(event.event_id), ec)) {
      for (const auto& f : json::parse(read_file(failed_path(event.event_id)))["failures"]) {
        failed[f["url"].get<std::string>()] = f["reason"].get<std::string>();
      }
    }
    if (options_.retry_failed) failed.clear();
    std::vector<ingestion::ArticleRef> todo;
    for (const auto& ref : selected) {
      if (failed.count(ref.url)) continue;
      if (store_.find_article(event.event_id, article_id_for_url(ref.url))) continue;
      todo.push_back(ref);
    }
    if (options_.dry_run) {
      say("sample " + event.event_id + ": " + std::to_string(todo.size()) + " pages to fetch");
      continue;
    }
    write_json_if_changed(config_.work_dir / "sampling" / (event.event_id + ".json"), reports);

    auto batch = ingestion::fetch_batch(todo, *fetcher, event.event_id, config_.fetch.workers);
    for (const auto& a : batch.articles) {
      try {
        store_.upsert(a);
      } catch (const Error& e) {
        failed[a.url] = e.what();
      }
    }
    for (const auto& f : batch.failures) {
      if (f.transient) {
        result.failures.push_back("fetch " + f.url + ": " + f.reason);
      } else {
        failed[f.url] = f.reason;
      }
    }
    ordered_json fj;
    fj["failures"] = ordered_json::array();
    for (const auto& [url, reason] : failed) fj["failures"].push_back({{"url", url}, {"reason", reason}});
    if (!failed.empty() || std::filesystem::exists(failed_path(event.event_id), ec)) {
      write_json_if_changed(failed_path(event.event_id), fj);
    }
    say("sample " + event.event_id + ": " + std::to_string(batch.articles.size()) + " extracted, " +
        std::to_string(batch.failures.size()) + " failed");
  }
  if (!options_.dry_run) manifest_.counters.sampled = sampled;
  return finish(Stage::sample, std::move(result));
}

// ---- classify -------------------------------------------------------------

StageResult Pipeline::classify() {
  require_stage(Stage::sample, "sample");
  StageResult result;
  for (const auto& event : config_.events) {
    std::vector<corpus::Article> todo;
    for (auto& a : store_.list_articles(event.event_id)) {
      if (!a.topic_id) todo.push_back(std::move(a));
    }
    if (options_.dry_run) {
      say("classify " + event.event_id + ": " + std::to_string(todo.size()) + " articles");
      continue;
    }
    if (todo.empty()) continue;
    auto& gw = gateway();
    const auto& lib = prompts();
    std::vector<std::optional<classify::ClassificationResult>> out(todo.size());
    std::vector<std::string> errors(todo.size());
    parallel_for(todo.size(), config_.llm.concurrency, [&](std::size_t i) {
      try {
        out[i] = classify::classify_article(todo[i], event, gw, lib);
      } catch (const std::exception& e) {
        errors[i] = is_unreachable(e) ? retry_hint(e.what()) : e.what();
      }
    });
    for (std::size_t i = 0; i < todo.size(); ++i) {
      if (!out[i]) {
        result.failures.push_back("classify " + todo[i].article_id + ": " + errors[i]);
        continue;
      }
      todo[i].topic_id = out[i]->topic_id;
      store_.upsert(todo[i]);
    }
    say("classify " + event.event_id + ": " + std::to_string(todo.size()) + " articles");
  }
  return finish(Stage::classify, std::move(result));
}

// ---- summarize ------------------------------------------------------------

StageResult Pipeline::summarize() {
  require_stage(Stage::classify, "classify");
  for (const auto& event : config_.events) {
    for (const auto& a : store_.list_articles(event.event_id)) {
      if (!a.topic_id) throw PreconditionError("stage precondition: classify incomplete");
    }
  }
  StageResult result;
  for (const auto& event : config_.events) {
    // per-article summaries
    std::vector<corpus::Article> todo;
    for (auto& a : store_.list_articles(event.event_id)) {
      if (a.topic_id != event.taxonomy.fallback_topic_id && !a.article_summary) todo.push_back(std::move(a));
    }
    if (options_.dry_run) {
      say("summarize " + event.event_id + ": " + std::to_string(todo.size()) + " article summaries");
    } else if (!todo.empty()) {
      auto& gw = gateway();
      const auto& lib = prompts();
      std::vector<std::optional<summarize::ArticleSummary>> out(todo.size());
      std::vector<std::string> errors(todo.size());
      parallel_for(todo.size(), config_.llm.concurrency, [&](std::size_t i) {
        try {
          out[i] = summarize::summarize_article(todo[i], gw, lib);
        } catch (const std::exception& e) {
          errors[i] = is_unreachable(e) ? retry_hint(e.what()) : e.what();
        }
      });
      for (std::size_t i = 0; i < todo.size(); ++i) {
        if (!out[i]) {
          result.failures.push_back("summarize " + todo[i].article_id + ": " + errors[i]);
          continue;
        }
        todo[i].article_summary = out[i]->text;
        store_.upsert(todo[i]);
        std::string flags;
        if (out[i]->body_truncated) flags += "body truncated to fit the context window; ";
        if (out[i]->length_warning) {
          flags += "summary has " + std::to_string(out[i]->sentences) + " sentences after retry; ";
        }
        if (!flags.empty()) manifest_.warnings["summary:" + todo[i].article_id] = flags.substr(0, flags.size() - 2);
      }
    }

    // stories, one per (topic, year) holding summarized articles
    auto articles = store_.list_articles(event.event_id);
    std::erase_if(articles, [](const auto& a) { return !a.article_summary; });
    auto groups = story_groups(event, articles);
    const auto gen = options_.dry_run ? std::string() : generator();

    struct Job {
      const Group* group;
      std::string story_id;
      std::vector<std::string> source_ids;
    };
    std::vector<Job> jobs;
    for (const auto& g : groups) {
      Job job{&g, corpus::StoryKey{event.event_id, g.topic_id, g.year}.id(), {}};
      for (const auto& a : g.articles) job.source_ids.push_back(a.article_id);
      auto existing = store_.find_story(job.story_id);
      if (existing && existing->source_article_ids == job.source_ids &&
          (options_.dry_run || existing->generator == gen)) {
        continue;
      }
      jobs.push_back(std::move(job));
    }
    if (options_.dry_run) {
      for (const auto& j : jobs) {
        say("summarize story " + j.story_id + ": " + std::to_string(j.source_ids.size()) +
            " summaries in " + std::to_string(corpus::expected_batch_count(j.source_ids.size())) + " batches");
      }
      continue;
    }
    if (jobs.empty()) continue;

    auto& gw = gateway();
    const auto& lib = prompts();
    std::vector<std::optional<corpus::Story>> built(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::vector<std::string> notes(jobs.size());
    parallel_for(jobs.size(), config_.llm.concurrency, [&](std::size_t i) {
      const auto& job = jobs[i];
      const auto* topic = event.taxonomy.find(job.group->topic_id);
      summarize::StoryContext ctx{event.name, topic ? topic->label : job.group->topic_id, job.group->year};
      std::vector<summarize::DatedSummary> items;
      for (const auto& a : job.group->articles) items.push_back({a.article_id, a.published_at, *a.article_summary});

      // resume an interrupted fold of the same sources
      summarize::FoldState resume;
      const auto fp = fold_path(job.story_id);
      std::error_code ec;
      if (std::filesystem::exists(fp, ec)) {
        auto j = json::parse(read_file(fp));
        if (j["source_article_ids"].get<std::vector<std::string>>() == job.source_ids &&
            j["generator"].get<std::string>() == gen) {
          resume.draft = j["draft"].get<std::string>();
          resume.batches_consumed = j["batches_consumed"].get<int>();
          resume.articles_consumed = j["articles_consumed"].get<int>();
        }
      }
      try {
        auto l2 = summarize::generate_l2(ctx, items, gw, lib, resume);
        std::filesystem::remove(fp, ec);
        auto l1 = summarize::generate_l1(l2.l2_text, gw, lib);
        auto jargon = summarize::extract_jargon(l2.l2_text, gw, lib);

        corpus::Story s;
        s.story_id = job.story_id;
        s.l2_text = l2.l2_text;
        s.l1_text = l1.text;
        for (auto& e : jargon.entries) {
          e.story_ids = {job.story_id};
          s.glossary.push_back(std::move(e));
        }
        s.source_article_ids = job.source_ids;
        s.batch_count = l2.batch_count;
        s.generated_at = now();
        s.generator = gen;
        built[i] = std::move(s);

        std::string flags;
        if (l2.clipped_items) flags += std::to_string(l2.clipped_items) + " summaries clipped to fit 20 per batch; ";
        if (l2.draft_truncations) flags += "draft shortened " + std::to_string(l2.draft_truncations) + "x; ";
        if (l1.trimmed) flags += "L1 trimmed locally after retry; ";
        if (!jargon.warning.empty()) flags += jargon.warning + "; ";
        if (!flags.empty()) notes[i] = flags.substr(0, flags.size() - 2);
      } catch (const summarize::FoldInterrupted& e) {
        const auto& st = e.state();
        if (st.batches_consumed > 0) {
          ordered_json j{{"story_id", job.story_id},
                         {"source_article_ids", job.source_ids},
                         {"generator", gen},
                         {"draft", st.draft},
                         {"batches_consumed", st.batches_consumed},
                         {"articles_consumed", st.articles_consumed}};
          write_json_if_changed(fp, j);
        }
        bool unreachable = false;
        try {
          std::rethrow_exception(e.cause());
        } catch (const std::exception& cause) {
          unreachable = is_unreachable(cause);
        }
        errors[i] = unreachable ? retry_hint(e.what()) : e.what();
      } catch (const std::exception& e) {
        errors[i] = is_unreachable(e) ? retry_hint(e.what()) : e.what();
      }
    });

    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (!built[i]) {
        result.failures.push_back("story " + jobs[i].story_id + ": " + errors[i]);
        continue;
      }
      store_.upsert(*built[i]);
      if (!notes[i].empty()) {
        manifest_.warnings["story:" + jobs[i].story_id] = notes[i];
      } else {
        manifest_.warnings.erase("story:" + jobs[i].story_id);
      }
      say("story " + jobs[i].story_id + ": " + std::to_string(built[i]->batch_count) + " batches");
    }

    // event glossary rebuilt from the stories in a fixed order
    std::vector<corpus::GlossaryEntry> glossary;
    auto stories = store_.list_stories(event.event_id);
    std::sort(stories.begin(), stories.end(), [&](const auto& a, const auto& b) {
      auto ka = corpus::StoryKey::parse(a.story_id), kb = corpus::StoryKey::parse(b.story_id);
      auto pos = [&](const std::string& t) {
        for (std::size_t k = 0; k < event.taxonomy.topics.size(); ++k) {
          if (event.taxonomy.topics[k].topic_id == t) return k;
        }
        return event.taxonomy.topics.size();
      };
      return std::pair(pos(ka.topic_id), ka.year) < std::pair(pos(kb.topic_id), kb.year);
    });
    for (const auto& s : stories) summarize::merge_glossary(glossary, s.glossary, s.story_id);
    for (const auto& g : glossary) store_.upsert(event.event_id, g);
  }
  return finish(Stage::summarize, std::move(result));
}

// ---- numeric --------------------------------------------------------------

StageResult Pipeline::numeric() {
  require_stage(Stage::summarize, "summarize");
  StageResult result;
  for (const auto& event : config_.events) {
    std::vector<corpus::Story> todo;
    for (auto& s : store_.list_stories(event.event_id)) {
      auto it = manifest_.numeric_done.find(s.story_id);
      if (it != manifest_.numeric_done.end() && it->second == sha256_hex(s.l2_text)) continue;
      todo.push_back(std::move(s));
    }
    if (options_.dry_run) {
      say("numeric " + event.event_id + ": " + std::to_string(todo.size()) + " stories");
      continue;
    }
    if (todo.empty()) continue;
    auto& gw = gateway();
    const auto& lib = prompts();
    std::vector<std::optional<numeric::NumericResult>> out(todo.size());
    std::vector<std::string> errors(todo.size());
    parallel_for(todo.size(), config_.llm.concurrency, [&](std::size_t i) {
      try {
        out[i] = numeric::extract_numeric(todo[i].l2_text, gw, lib);
      } catch (const std::exception& e) {
        errors[i] = is_unreachable(e) ? retry_hint(e.what()) : e.what();
      }
    });
    for (std::size_t i = 0; i < todo.size(); ++i) {
      if (!out[i]) {
        result.failures.push_back("numeric " + todo[i].story_id + ": " + errors[i]);
        continue;
      }
      todo[i].numeric_facts = out[i]->facts;
      store_.upsert(todo[i]);
      manifest_.numeric_done[todo[i].story_id] = sha256_hex(todo[i].l2_text);
      if (!out[i]->warnings.empty()) {
        std::string w;
        for (const auto& s : out[i]->warnings) w += (w.empty() ? "" : "; ") + s;
        manifest_.warnings["numeric:" + todo[i].story_id] = w;
      }
    }
    say("numeric " + event.event_id + ": " + std::to_string(todo.size()) + " stories");
  }
  auto r = finish(Stage::numeric, std::move(result));
  if (!options_.dry_run && r.exit_code == kExitOk) {
    manifest_.advance(Stage::done);
    manifest_.save(config_.manifest_path());
  }
  return r;
}

StageResult Pipeline::all() {
  // in a dry run later stages are planned against the current state, so
  // their preconditions are not enforced
  using StageFn = StageResult (Pipeline::*)();
  const std::vector<std::pair<Stage, StageFn>> stages{{Stage::ingest, &Pipeline::ingest},
                                                      {Stage::sample, &Pipeline::sample},
                                                      {Stage::classify, &Pipeline::classify},
                                                      {Stage::summarize, &Pipeline::summarize},
                                                      {Stage::numeric, &Pipeline::numeric}};
  StageResult last;
  for (const auto& [stage, fn] : stages) {
    if (options_.dry_run) {
      try {
        last = (this->*fn)();
      } catch (const PreconditionError&) {
        say(stage_name(stage) + ": waits for earlier stages");
      }
      continue;
    }
    last = (this->*fn)();
    if (last.exit_code != kExitOk) return last;
  }
  return last;
}

}  // namespace policystory::pipeline
