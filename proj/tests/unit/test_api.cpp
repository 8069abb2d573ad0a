#include <doctest.h>

#include <httplib.h>

#include <sstream>
#include <thread>

#include "policystory/api/handler.hpp"
#include "policystory/api/server.hpp"
#include "policystory/corpus/store.hpp"
#include "support.hpp"

using namespace policystory;
using namespace policystory::api;
using nlohmann::json;
using testsupport::TempDir;

namespace {

ApiResponse get(const Snapshot& s, const std::string& path, std::map<std::string, std::string> q = {}) {
  return handle(s, ApiRequest{"GET", path, std::move(q)});
}

struct Fixture {
  TempDir dir{"ps-api"};
  std::shared_ptr<const Snapshot> snap;
  Fixture() {
    testsupport::build_api_fixture_store(dir / "store");
    snap = Snapshot::load(dir / "store");
  }
};

const char* kDefense = "/api/events/union-budget/topics/defense/stories";

}  // namespace

TEST_CASE("events lists both fixture events") {
  Fixture f;
  auto r = get(*f.snap, "/api/events");
  CHECK(r.status == 200);
  REQUIRE(r.body.size() == 2);
  CHECK(r.body[0]["event_id"] == "farmers-protests");
  CHECK(r.body[1]["event_id"] == "union-budget");
  CHECK(r.body[1]["topic_count"] == 8);
}

TEST_CASE("empty store gives an empty list, missing store a 500") {
  TempDir dir;
  auto empty = Snapshot::load(dir.path());
  CHECK(get(*empty, "/api/events").body == json::array());
  auto missing = Snapshot::load(dir / "nope");
  auto r = get(*missing, "/api/events");
  CHECK(r.status == 500);
  CHECK(r.body["code"] == "store_unavailable");
}

TEST_CASE("topics per event") {
  Fixture f;
  auto budget = get(*f.snap, "/api/events/union-budget/topics");
  CHECK(budget.body["topics"].size() == 8);
  CHECK(budget.body["topics"][1]["topic_id"] == "defense");
  CHECK(budget.body["topics"][1]["years"] == json::array({2019, 2020, 2021, 2022, 2023, 2024}));
  CHECK(get(*f.snap, "/api/events/farmers-protests/topics").body["topics"].size() == 5);
  auto missing = get(*f.snap, "/api/events/nope/topics");
  CHECK(missing.status == 404);
  CHECK(missing.body["code"] == "event_not_found");
}

TEST_CASE("stories default to l1 ascending") {
  Fixture f;
  auto r = get(*f.snap, kDefense);
  CHECK(r.status == 200);
  REQUIRE(r.body.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(r.body[i]["year"] == 2019 + i);
    CHECK(r.body[i].contains("l1_text"));
    CHECK_FALSE(r.body[i].contains("l2_text"));
  }
  CHECK(get(*f.snap, kDefense, {{"order", "asc"}}).body == r.body);
  auto desc = get(*f.snap, kDefense, {{"order", "desc"}});
  for (int i = 0; i < 6; ++i) CHECK(desc.body[i]["year"] == 2024 - i);
}

TEST_CASE("l2 and numeric views") {
  Fixture f;
  auto l2 = get(*f.snap, kDefense, {{"level", "l2"}});
  CHECK(l2.body[4]["year"] == 2023);
  CHECK(l2.body[4].contains("l2_text"));
  CHECK(l2.body[4]["glossary"][0]["term"] == "fiscal deficit");
  auto num = get(*f.snap, kDefense, {{"level", "numeric"}});
  auto facts = num.body[4]["numeric_facts"];
  bool found = false;
  for (auto& fact : facts) {
    found |= fact["key"] == "Defense Budget" && fact["raw_value"] == "INR 5.94 lakh crore" &&
             fact["normalized_value"] == "5940000000000";
  }
  CHECK(found);
  CHECK(num.body[0]["numeric_facts"][0]["raw_value"] == "INR 3.05 lakh crore");
}

TEST_CASE("parameter and path errors") {
  Fixture f;
  auto bad = get(*f.snap, kDefense, {{"level", "xyz"}});
  CHECK(bad.status == 400);
  CHECK(bad.body["code"] == "bad_level");
  CHECK(get(*f.snap, kDefense, {{"order", "up"}}).body["code"] == "bad_order");
  auto topic = get(*f.snap, "/api/events/union-budget/topics/nope/stories");
  CHECK(topic.status == 404);
  CHECK(topic.body["code"] == "topic_not_found");
  CHECK(get(*f.snap, "/api/whatever").status == 404);
  CHECK(handle(*f.snap, ApiRequest{"POST", "/api/events", {}}).status == 404);
}

TEST_CASE("glossary sorted case-insensitively") {
  Fixture f;
  auto r = get(*f.snap, "/api/events/union-budget/glossary");
  REQUIRE(r.body.size() == 2);
  CHECK(r.body[0]["term"] == "fiscal deficit");
  CHECK(r.body[1]["term"] == "MSP");
  CHECK(get(*f.snap, "/api/events/farmers-protests/glossary").body == json::array());
  CHECK(get(*f.snap, "/api/events/nope/glossary").status == 404);
}

TEST_CASE("every crawled response validates and the store is untouched") {
  Fixture f;
  auto before = corpus::store_checksum(f.dir / "store");
  auto hits = testsupport::crawl_api(*f.snap);
  CHECK(hits.size() > 50);
  for (auto& h : hits) {
    auto errors = testsupport::validate_hit(h);
    INFO(h.path << " -> " << h.response.body.dump());
    CHECK(errors.empty());
  }
  CHECK(corpus::store_checksum(f.dir / "store") == before);
}

TEST_CASE("http server: json, cors, access log") {
  Fixture f;
  std::ostringstream log;
  Server server(ServerOptions{"127.0.0.1", 0, f.dir / "store", "*", &log});
  int port = server.bind();
  REQUIRE(port > 0);
  std::thread t([&] { server.serve(); });
  httplib::Client client("127.0.0.1", port);
  for (int i = 0; i < 100 && !server.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));

  auto res = client.Get("/api/events/union-budget/topics/defense/stories?level=numeric&order=desc");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(res->get_header_value("Content-Type").find("application/json") != std::string::npos);
  auto body = json::parse(res->body);
  CHECK(body[0]["year"] == 2024);

  auto missing = client.Get("/api/events/none/topics");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "event_not_found");

  auto options = client.Options("/api/events");
  REQUIRE(options);
  CHECK(options->status == 204);

  server.stop();
  t.join();
  std::istringstream lines(log.str());
  int count = 0;
  for (std::string line; std::getline(lines, line);) {
    auto entry = json::parse(line);
    CHECK(entry.contains("status"));
    CHECK(entry.contains("latency_ms"));
    ++count;
  }
  CHECK(count >= 2);
}
