// Acceptance checks for the primary criteria. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fails.

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "policystory/api/handler.hpp"
#include "policystory/classify/agreement.hpp"
#include "policystory/classify/presets.hpp"
#include "policystory/corpus/store.hpp"
#include "policystory/ingestion/query.hpp"
#include "policystory/ingestion/sampling.hpp"
#include "policystory/llm/mock_backend.hpp"
#include "policystory/llm/prompts.hpp"
#include "policystory/numeric/indian_number.hpp"
#include "policystory/pipeline/config.hpp"
#include "policystory/summarize/story.hpp"
#include "policystory/util/text.hpp"
#include "support.hpp"

using namespace policystory;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    else if (!cond) why << "; " << what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(const std::string& name, const std::function<void(Check&, std::ostringstream&)>& body) {
  Check c;
  std::ostringstream detail;
  try {
    body(c, detail);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  if (!c.ok) ++failures;
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << name << "  [" << (c.ok ? detail.str() : c.why.str()) << "]"
            << std::endl;
}

struct GoldenRun {
  int exit_code = -1;
  double seconds = 0;
  fs::path dir;
  std::string output;
};

GoldenRun golden_run(const fs::path& dir) {
  GoldenRun g;
  g.dir = dir;
  auto config = testsupport::write_mini_config(dir);
  auto t0 = std::chrono::steady_clock::now();
  auto r = testsupport::run_cli({"all", "--config", config.string(), "--seed", "7"});
  g.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g.exit_code = r.exit_code;
  g.output = r.output;
  return g;
}

std::vector<json> request_log(const fs::path& dir) {
  std::vector<json> out;
  for (auto& line : testsupport::read_lines(dir / "work" / "requests.jsonl")) out.push_back(json::parse(line));
  return out;
}

std::string exact_oracle(const std::string& int_digits, const std::string& frac, int exp) {
  using boost::multiprecision::cpp_int;
  cpp_int n(int_digits + frac);
  int shift = exp - static_cast<int>(frac.size());
  if (shift >= 0) {
    for (int i = 0; i < shift; ++i) n *= 10;
    return n.str();
  }
  cpp_int den = 1;
  for (int i = 0; i < -shift; ++i) den *= 10;
  cpp_int whole = n / den, rest = n % den;
  if (rest == 0) return whole.str();
  std::string f = rest.str();
  f.insert(0, static_cast<std::size_t>(-shift) - f.size(), '0');
  while (f.back() == '0') f.pop_back();
  return whole.str() + "." + f;
}

}  // namespace

int main() {
  testsupport::TempDir tmp("ps-accept");
  GoldenRun run1 = golden_run(tmp / "run1");
  GoldenRun run2 = golden_run(tmp / "run2");
  const fs::path store = run1.dir / "store";
  auto config = pipeline::load_config(run1.dir / "mini.toml");
  corpus::Store golden(store);

  report("end-to-end golden run", [&](Check& c, std::ostringstream& d) {
    std::size_t articles = 0;
    std::set<int> years;
    for (auto& e : config.events) {
      for (auto& a : golden.list_articles(e.event_id)) {
        ++articles;
        years.insert(a.year);
      }
    }
    c.expect(articles >= 60, "only " + std::to_string(articles) + " articles");
    c.expect(config.events.size() == 2, "expected 2 events");
    c.expect(run1.exit_code == 0, "run 1 exit " + std::to_string(run1.exit_code) + ": " + run1.output);
    c.expect(run2.exit_code == 0, "run 2 exit " + std::to_string(run2.exit_code));
    c.expect(run1.seconds < 60 && run2.seconds < 60, "slower than 60 s");
    auto h1 = corpus::store_checksum(store), h2 = corpus::store_checksum(run2.dir / "store");
    c.expect(h1 == h2, "store checksums differ between runs");
    for (auto& e : config.events) {
      int span = e.date_window.end.year - e.date_window.start.year + 1;
      c.expect(span == 3, e.event_id + " spans " + std::to_string(span) + " years");
    }
    d << articles << " articles, " << run1.seconds << " s / " << run2.seconds << " s, store sha256 "
      << h1.substr(0, 16);
  });

  report("query fidelity", [&](Check& c, std::ostringstream& d) {
    const std::string farmers =
        R"("farmers" AND ("protest" OR "agitation" OR "farm laws" OR "MSP" OR "march to Delhi"))";
    const std::string budget =
        R"("budget" AND ("finance minister" OR "union budget" OR "fiscal policy" OR "tax reforms" OR "Nirmala" OR "budget speech" OR "budget allocation" OR "fiscal deficit"))";
    c.expect(ingestion::build_query(*classify::preset_event("farmers-protests")).rendered == farmers, "farmers query");
    c.expect(ingestion::build_query(*classify::preset_event("union-budget")).rendered == budget, "budget query");
    d << "both strings identical";
  });

  report("sampling", [&](Check& c, std::ostringstream& d) {
    std::vector<ingestion::ArticleRef> refs;
    for (int m = 1; m <= 12; ++m) {
      for (int i = 0; i < 2000; ++i) {
        refs.push_back({"https://example.in/" + std::to_string(m) + "/" + std::to_string(i), std::nullopt,
                        Date{2021, m, 1 + i % 28}, std::nullopt});
      }
    }
    auto r = ingestion::stratified_sample(refs, 2021, 2000, 7);
    std::map<int, int> hist;
    for (int v : r.report.month_counts) ++hist[v];
    c.expect(hist == std::map<int, int>{{166, 4}, {167, 8}}, "month counts not {167x8, 166x4}");

    std::vector<ingestion::ArticleRef> sparse;
    int supply[12] = {30, 20, 5, 0, 10, 10, 15, 20, 10, 10, 10, 10};
    for (int m = 1; m <= 12; ++m) {
      for (int i = 0; i < supply[m - 1]; ++i) {
        sparse.push_back({"https://example.in/s/" + std::to_string(m) + "/" + std::to_string(i), std::nullopt,
                          Date{2019, m, 1 + i}, std::nullopt});
      }
    }
    auto s = ingestion::stratified_sample(sparse, 2019, 2000, 7);
    c.expect(s.selected.size() == 150, "sparse year lost articles");
    c.expect(s.report.shortfall_months.size() == 12, "shortfall months not reported");

    std::vector<ingestion::ArticleRef> mid(refs.begin(), refs.begin() + 6000);
    auto a = ingestion::stratified_sample(mid, 2021, 300, 99);
    auto b = ingestion::stratified_sample(mid, 2021, 300, 99);
    auto e = ingestion::stratified_sample(mid, 2021, 300, 99);
    c.expect(a.selected == b.selected && b.selected == e.selected, "same seed gave different selections");
    d << "167x8 + 166x4; sparse 150/150 with 12 shortfall months; 3 runs identical";
  });

  report("batch/budget", [&](Check& c, std::ostringstream& d) {
    auto backend = std::make_shared<testsupport::RecordingBackend>();
    auto gw = testsupport::make_gateway(backend);
    std::vector<summarize::DatedSummary> items;
    for (int i = 0; i < 45; ++i) {
      items.push_back({"a" + std::to_string(i), Date{2021, 1 + i / 4, 1 + i % 28},
                       "Summary " + std::to_string(i) + " of an article. It has two sentences."});
    }
    auto r = summarize::generate_l2({"Union Budget", "Defense", 2021}, items, *gw, llm::PromptLibrary::builtin());
    auto story_calls = backend->requests_for("story_first").size() + backend->requests_for("story_fold").size();
    c.expect(story_calls == 3, std::to_string(story_calls) + " story calls for 45 summaries");
    c.expect(r.batch_count == 3, "batch_count " + std::to_string(r.batch_count));

    auto log = request_log(run1.dir);
    std::size_t worst = 0;
    for (auto& entry : log) worst = std::max<std::size_t>(worst, entry["estimated_total_tokens"].get<std::size_t>());
    c.expect(!log.empty(), "empty request log");
    c.expect(worst <= 4096, "a request estimated at " + std::to_string(worst) + " tokens");
    std::size_t stories = 0;
    for (auto& e : config.events) {
      for (auto& st : golden.list_stories(e.event_id)) {
        ++stories;
        int expected = static_cast<int>((st.source_article_ids.size() + 19) / 20);
        c.expect(st.batch_count == expected, st.story_id + " batch_count " + std::to_string(st.batch_count));
      }
    }
    d << "3 calls for 45; " << log.size() << " logged requests, max " << worst << " tokens; " << stories
      << " stories with batch_count = ceil(n/20)";
  });

  report("classification partition", [&](Check& c, std::ostringstream& d) {
    std::map<std::string, corpus::Article> by_id;
    std::size_t total = 0, cluster_sum = 0;
    for (auto& e : config.events) {
      std::map<std::string, std::size_t> clusters;
      for (auto& a : golden.list_articles(e.event_id)) {
        ++total;
        c.expect(a.topic_id.has_value(), a.article_id + " has no topic");
        if (a.topic_id) {
          c.expect(e.taxonomy.contains(*a.topic_id), a.article_id + " topic not in taxonomy");
          ++clusters[*a.topic_id];
        }
        by_id[a.article_id] = a;
      }
      for (auto& [t, n] : clusters) cluster_sum += n;
    }
    c.expect(cluster_sum == total, "cluster sizes do not sum to corpus size");

    std::size_t prompts = 0;
    for (auto& entry : request_log(run1.dir)) {
      if (entry["task"] != "classify") continue;
      ++prompts;
      std::string tag = entry["backend_tag"];
      auto id = tag.substr(tag.find(':') + 1);
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        c.expect(false, "classify prompt for unknown article " + id);
        continue;
      }
      auto& a = it->second;
      std::string article = llm::prompt_section(entry["user_prompt"].get<std::string>(), "ARTICLE");
      c.expect(article == "Title: " + a.title + "\nFirst paragraph: " + a.first_paragraph,
               "prompt for " + id + " is not title + first paragraph");
      auto second_para = a.body.substr(std::min(a.body.size(), a.first_paragraph.size()));
      c.expect(entry["user_prompt"].get<std::string>().find(std::string(text::trim(second_para))) ==
                   std::string::npos,
               "body text leaked into the prompt for " + id);
    }
    c.expect(prompts == total, std::to_string(prompts) + " classify prompts for " + std::to_string(total) + " articles");
    d << total << " articles, one topic each; " << prompts << " prompts checked";
  });

  report("numeric parsing", [&](Check& c, std::ostringstream& d) {
    c.expect(numeric::parse_indian_number("INR 5.94 lakh crore").normalized.to_string() == "5940000000000",
             "5.94 lakh crore");
    c.expect(numeric::parse_indian_number("INR 3.05 lakh crore").normalized.to_string() == "3050000000000",
             "3.05 lakh crore");
    const std::pair<const char*, int> scales[] = {{"", 0},         {"thousand", 3}, {"lakh", 5},
                                                  {"lac", 5},      {"million", 6},  {"crore", 7},
                                                  {"billion", 9},  {"lakh crore", 12}, {"lakh-crore", 12},
                                                  {"trillion", 12}};
    std::mt19937_64 rng(2025);
    int mismatches = 0;
    for (int i = 0; i < 200; ++i) {
      std::string digits = std::to_string(1 + rng() % 9);
      for (int k = 0, n = static_cast<int>(rng() % 8); k < n; ++k) digits += std::to_string(rng() % 10);
      std::string frac;
      for (int k = 0, n = static_cast<int>(rng() % 6); k < n; ++k) frac += std::to_string(rng() % 10);
      auto& [word, exp] = scales[rng() % std::size(scales)];
      std::string text = "INR " + digits + (frac.empty() ? "" : "." + frac) + (*word ? std::string(" ") + word : "");
      if (numeric::parse_indian_number(text).normalized.to_string() != exact_oracle(digits, frac, exp)) {
        ++mismatches;
        c.expect(false, text);
      }
    }
    d << "exact for both headline amounts; 200 random cases, " << mismatches << " mismatches";
  });

  report("agreement", [&](Check& c, std::ostringstream& d) {
    using classify::AgreementMeasure;
    classify::AnnotationSheet all;
    all.annotator_count = 3;
    for (int i = 0; i < 50; ++i) {
      std::string t = i % 2 ? "defense" : "taxation";
      all.items.push_back({"a" + std::to_string(i), {t, t, t}});
    }
    c.expect(classify::compute_agreement(all, AgreementMeasure::raw) == 1.0, "raw != 1");
    c.expect(classify::compute_agreement(all, AgreementMeasure::fleiss_kappa) == 1.0, "kappa != 1");

    classify::AnnotationSheet s89;
    s89.annotator_count = 3;
    for (int i = 0; i < 100; ++i) {
      if (i < 89) s89.items.push_back({"b" + std::to_string(i), {"defense", "defense", "defense"}});
      else s89.items.push_back({"b" + std::to_string(i), {"defense", "defense", "taxation"}});
    }
    double raw = classify::compute_agreement(s89, AgreementMeasure::raw);
    c.expect(raw == 0.89, "raw " + std::to_string(raw));

    std::mt19937_64 rng(7);
    classify::AnnotationSheet random;
    random.annotator_count = 2;
    for (int i = 0; i < 10000; ++i) {
      random.items.push_back({"r" + std::to_string(i), {"t" + std::to_string(rng() % 8), "t" + std::to_string(rng() % 8)}});
    }
    double kappa = classify::compute_agreement(random, AgreementMeasure::fleiss_kappa);
    c.expect(std::abs(kappa) <= 0.05, "random kappa " + std::to_string(kappa));
    d << "unanimous 1.0/1.0; raw 0.89; random kappa " << kappa;
  });

  report("api contract", [&](Check& c, std::ostringstream& d) {
    auto before = corpus::store_checksum(store);
    auto snap = api::Snapshot::load(store);
    auto hits = testsupport::crawl_api(*snap);
    std::size_t invalid = 0;
    for (auto& h : hits) {
      auto errors = testsupport::validate_hit(h);
      if (!errors.empty()) {
        ++invalid;
        c.expect(false, h.path + ": " + errors.front());
      }
    }
    // level and order semantics on every stories route
    std::map<std::string, std::map<std::string, json>> by_route;
    for (auto& h : hits) {
      if (h.schema.rfind("stories_", 0) != 0 || h.response.status != 200) continue;
      std::string key = (h.query.count("level") ? h.query.at("level") : "-") + "/" +
                        (h.query.count("order") ? h.query.at("order") : "-");
      by_route[h.path][key] = h.response.body;
    }
    for (auto& [path, views] : by_route) {
      c.expect(views["-/-"] == views["l1/asc"], path + ": default is not l1 asc");
      c.expect(views["l1/-"] == views["l1/asc"], path + ": default order is not asc");
      for (std::string level : {"l1", "l2", "numeric"}) {
        auto asc = views[level + "/asc"], desc = views[level + "/desc"];
        json reversed = json::array();
        for (auto it = desc.rbegin(); it != desc.rend(); ++it) reversed.push_back(*it);
        c.expect(asc == reversed, path + " " + level + ": desc is not asc reversed");
        for (std::size_t i = 1; i < asc.size(); ++i) {
          c.expect(asc[i - 1]["year"] < asc[i]["year"], path + ": not ascending");
        }
        for (auto& s : asc) {
          c.expect(s.contains("l1_text") == (level == "l1"), path + ": l1_text present in " + level);
          c.expect(s.contains("l2_text") == (level == "l2"), path + ": l2_text present in " + level);
          c.expect(s.contains("numeric_facts") == (level == "numeric"), path + ": numeric_facts in " + level);
        }
      }
    }
    c.expect(corpus::store_checksum(store) == before, "store changed during the crawl");
    d << hits.size() << " responses schema-valid, " << by_route.size() << " story routes, checksum unchanged";
  });

  report("story length contract", [&](Check& c, std::ostringstream& d) {
    std::size_t n = 0, longest = 0;
    for (auto& e : config.events) {
      for (auto& s : golden.list_stories(e.event_id)) {
        ++n;
        auto w1 = text::word_count(s.l1_text), w2 = text::word_count(s.l2_text);
        longest = std::max(longest, w1);
        c.expect(w1 < w2, s.story_id + ": L1 " + std::to_string(w1) + " words, L2 " + std::to_string(w2));
        c.expect(w1 <= 200, s.story_id + ": L1 has " + std::to_string(w1) + " words");
      }
    }
    c.expect(n > 0, "no stories");
    d << n << " stories, longest L1 " << longest << " words";
  });

  std::cout << (failures == 0 ? "all primary criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
