#include "policystory/pipeline/manifest.hpp"

#include <array>

#include <json.hpp>

#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"

namespace policystory::pipeline {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 7> kStages{{
    {Stage::none, "none"},
    {Stage::ingest, "ingest"},
    {Stage::sample, "sample"},
    {Stage::classify, "classify"},
    {Stage::summarize, "summarize"},
    {Stage::numeric, "numeric"},
    {Stage::done, "done"},
}};

}  // namespace

std::string stage_name(Stage s) {
  for (const auto& [stage, name] : kStages) {
    if (stage == s) return std::string(name);
  }
  return "none";
}

Stage stage_from_name(std::string_view name) {
  for (const auto& [stage, n] : kStages) {
    if (n == name) return stage;
  }
  throw DecodeError("manifest: unknown stage '" + std::string(name) + "'");
}

void Manifest::advance(Stage s) {
  if (s > stage) stage = s;
}

void Manifest::validate() const {
  const auto& c = counters;
  for (auto v : {c.search_refs, c.sampled, c.fetched, c.extracted, c.failed, c.classified,
                 c.fallback, c.summarized, c.stories_built, c.numeric_stories}) {
    if (v < 0) throw ValidationError("Manifest: counters non-negative");
  }
  if (c.fetched != c.extracted + c.failed) {
    throw ValidationError("Manifest: fetched = extracted + failed");
  }
}

std::string Manifest::to_json_text() const {
  nlohmann::ordered_json j;
  j["run_id"] = run_id;
  j["stage"] = stage_name(stage);
  j["counters"] = {{"search_refs", counters.search_refs},
                   {"sampled", counters.sampled},
                   {"fetched", counters.fetched},
                   {"extracted", counters.extracted},
                   {"failed", counters.failed},
                   {"classified", counters.classified},
                   {"fallback", counters.fallback},
                   {"summarized", counters.summarized},
                   {"stories_built", counters.stories_built},
                   {"numeric_stories", counters.numeric_stories}};
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["failures"] = failures;
  j["warnings"] = warnings;
  j["numeric_done"] = numeric_done;
  return j.dump(2) + "\n";
}

void Manifest::save(const std::filesystem::path& path) const {
  validate();
  auto text = to_json_text();
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      if (read_file(path) == text) return;
    } catch (const Error&) {
    }
  }
  write_file_atomic(path, text);
}

std::optional<Manifest> Manifest::load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("manifest " + path.string() + ": " + e.what());
  }
  Manifest m;
  try {
    m.run_id = j.at("run_id").get<std::string>();
    m.stage = stage_from_name(j.at("stage").get<std::string>());
    const auto& c = j.at("counters");
    auto n = [&](const char* k) { return c.value(k, std::int64_t{0}); };
    m.counters = {n("search_refs"), n("sampled"), n("fetched"), n("extracted"), n("failed"),
                  n("classified"), n("fallback"), n("summarized"), n("stories_built"),
                  n("numeric_stories")};
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.failures = j.value("failures", std::vector<std::string>{});
    m.warnings = j.value("warnings", std::map<std::string, std::string>{});
    m.numeric_done = j.value("numeric_done", std::map<std::string, std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("manifest " + path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace policystory::pipeline
