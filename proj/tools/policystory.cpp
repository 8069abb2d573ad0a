// policystory command line: pipeline stages, API server, QA sheets.

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "policystory/api/server.hpp"
#include "policystory/classify/agreement.hpp"
#include "policystory/classify/qa_export.hpp"
#include "policystory/pipeline/config.hpp"
#include "policystory/pipeline/pipeline.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"

namespace ps = policystory;
namespace pl = policystory::pipeline;

namespace {

ps::api::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int report(const pl::StageResult& r) {
  if (!r.failures.empty()) {
    std::cerr << r.failures.size() << " failure(s):\n";
    for (const auto& f : r.failures) std::cerr << "  " << f << '\n';
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"policystory: longitudinal policy-news stories from a keyword-built corpus"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool dry_run = false;
  bool quiet = false;
  bool retry_failed = false;
  app.add_option("--config,-c", config_path, "Pipeline config (TOML)");
  app.add_option("--seed", seed, "Overrides run.seed; fixes all sampling");
  app.add_flag("--dry-run", dry_run, "Print the planned work without doing it");
  app.add_flag("--quiet,-q", quiet, "No progress output");

  const std::vector<std::string> stage_names{"ingest", "sample", "classify", "summarize", "numeric", "all"};
  std::map<std::string, CLI::App*> stages;
  for (const auto& name : stage_names) {
    stages[name] = app.add_subcommand(name, name == "all" ? "Run every stage in order" : "Run the " + name + " stage");
  }
  stages["sample"]->add_flag("--retry-failed", retry_failed, "Re-fetch pages that failed for good before");
  stages["all"]->add_flag("--retry-failed", retry_failed, "Re-fetch pages that failed for good before");

  auto* serve = app.add_subcommand("serve", "Serve the read-only JSON API over the store");
  std::optional<std::string> host;
  std::optional<int> port;
  serve->add_option("--host", host, "Bind address (default from config)");
  serve->add_option("--port", port, "Port (default from config)");

  auto* qa = app.add_subcommand("qa-export", "Write a review sheet for one topic cluster");
  std::string qa_event, qa_topic, qa_out;
  std::size_t qa_n = ps::classify::kDefaultQaSampleSize;
  std::size_t qa_annotators = ps::classify::kDefaultAnnotators;
  qa->add_option("--event", qa_event, "Event id")->required();
  qa->add_option("--topic", qa_topic, "Topic id")->required();
  qa->add_option("--n", qa_n, "Sample size")->check(CLI::PositiveNumber);
  qa->add_option("--annotators", qa_annotators, "Annotator columns")->check(CLI::Range(1, 20));
  qa->add_option("--out", qa_out, "Output CSV (default: work dir)");

  auto* agreement = app.add_subcommand("agreement", "Inter-annotator agreement of a completed sheet");
  std::string sheet_path;
  std::string measure = "both";
  agreement->add_option("--sheet", sheet_path, "Completed review CSV")->required();
  agreement->add_option("--measure", measure, "raw, fleiss_kappa or both")
      ->check(CLI::IsMember({"raw", "fleiss_kappa", "kappa", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pl::kExitConfig;
  }

  try {
    if (agreement->parsed()) {
      auto sheet = ps::classify::parse_annotation_sheet(ps::read_file(sheet_path));
      std::cout << std::fixed << std::setprecision(4);
      std::cout << "items: " << sheet.items.size() << ", annotators: " << sheet.annotator_count << '\n';
      if (measure == "raw" || measure == "both") {
        std::cout << "raw agreement: " << ps::classify::compute_agreement(sheet, ps::classify::AgreementMeasure::raw) << '\n';
      }
      if (measure != "raw") {
        std::cout << "fleiss kappa: "
                  << ps::classify::compute_agreement(sheet, ps::classify::AgreementMeasure::fleiss_kappa) << '\n';
      }
      return pl::kExitOk;
    }

    if (config_path.empty()) {
      std::cerr << "config error: --config is required for " << app.get_subcommands().front()->get_name() << '\n';
      return pl::kExitConfig;
    }
    auto config = pl::load_config(config_path);

    if (serve->parsed()) {
      ps::api::ServerOptions o;
      o.host = host.value_or(config.api.host);
      o.port = port.value_or(config.api.port);
      o.store_root = config.store;
      o.cors_origin = config.api.cors_origin;
      std::ofstream log_file;
      if (config.api.access_log) {
        std::filesystem::create_directories(config.api.access_log->parent_path());
        log_file.open(*config.api.access_log, std::ios::app);
        o.access_log = &log_file;
      } else {
        o.access_log = &std::cerr;
      }
      ps::api::Server server(o);
      if (!server.snapshot()->available) {
        std::cerr << "warning: " << server.snapshot()->load_error << " (serving store_unavailable)\n";
      }
      int bound = server.bind();
      if (bound < 0) {
        std::cerr << "cannot bind " << o.host << ":" << o.port << '\n';
        return pl::kExitPartial;
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << config.store.string() << " on http://" << o.host << ":" << bound << '\n';
      server.serve();
      return pl::kExitOk;
    }

    if (qa->parsed()) {
      ps::corpus::Store store(config.store);
      const auto s = seed.value_or(config.seed);
      std::filesystem::path out =
          qa_out.empty() ? config.work_dir / "qa" / (qa_event + "." + qa_topic + ".csv") : std::filesystem::path(qa_out);
      auto r = ps::classify::export_qa_sample(store, qa_event, qa_topic, qa_n,
                                              pl::Pipeline::derive_seed(s, "qa/" + qa_event + "/" + qa_topic), out,
                                              qa_annotators);
      std::cout << "wrote " << r.rows << " of " << r.cluster_size << " articles to " << r.path.string() << '\n';
      return pl::kExitOk;
    }

    pl::RunOptions options;
    options.dry_run = dry_run;
    options.seed = seed;
    options.retry_failed = retry_failed;
    options.out = quiet ? nullptr : &std::cout;
    pl::Pipeline pipeline(std::move(config), options);
    const auto name = app.get_subcommands().front()->get_name();
    pl::StageResult r;
    if (name == "ingest") r = pipeline.ingest();
    else if (name == "sample") r = pipeline.sample();
    else if (name == "classify") r = pipeline.classify();
    else if (name == "summarize") r = pipeline.summarize();
    else if (name == "numeric") r = pipeline.numeric();
    else r = pipeline.all();
    if (!quiet && !dry_run) {
      const auto& c = pipeline.manifest().counters;
      std::cout << "stage " << pl::stage_name(pipeline.manifest().stage) << ": fetched " << c.fetched
                << " (extracted " << c.extracted << ", failed " << c.failed << "), classified "
                << c.classified << ", stories " << c.stories_built << ", model calls "
                << pipeline.gateway_calls() << '\n';
    }
    return report(r);
  } catch (const pl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return pl::kExitConfig;
  } catch (const ps::PreconditionError& e) {
    std::cerr << e.what() << '\n';
    return pl::kExitConfig;
  } catch (const ps::NotFoundError& e) {
    std::cerr << "not found: " << e.what() << '\n';
    return pl::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pl::kExitPartial;
  }
}
