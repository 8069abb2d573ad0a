#include "policystory/api/server.hpp"

#include <chrono>

#include <httplib.h>

#include "policystory/util/date.hpp"

namespace policystory::api {

Server::Server(ServerOptions options)
    : options_(std::move(options)), http_(std::make_unique<httplib::Server>()) {
  snapshot_ = Snapshot::load(options_.store_root);
  install_routes();
}

Server::~Server() { stop(); }

std::shared_ptr<const Snapshot> Server::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void Server::reload() {
  auto fresh = Snapshot::load(options_.store_root);
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(fresh);
}

void Server::install_routes() {
  auto cors = [this](httplib::Response& res) {
    if (options_.cors_origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", options_.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };

  auto serve_api = [this, cors](const httplib::Request& req, httplib::Response& res) {
    const auto started = std::chrono::steady_clock::now();
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.query.emplace(k, v);

    auto snap = snapshot();  // pinned for the whole request
    auto response = handle(*snap, request);
    res.status = response.status;
    res.set_content(response.body.dump(), "application/json; charset=utf-8");
    cors(res);

    if (options_.access_log) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
      nlohmann::ordered_json line{{"ts", utc_now_iso()},
                                  {"method", req.method},
                                  {"path", req.path},
                                  {"query", req.params.empty() ? "" : httplib::detail::params_to_query_str(req.params)},
                                  {"status", response.status},
                                  {"latency_ms", ms.count()},
                                  {"remote", req.remote_addr}};
      std::lock_guard lock(log_mutex_);
      *options_.access_log << line.dump() << '\n' << std::flush;
    }
  };

  http_->Get(R"(/api(/.*)?)", serve_api);
  http_->Post(R"(/api(/.*)?)", serve_api);
  http_->Put(R"(/api(/.*)?)", serve_api);
  http_->Delete(R"(/api(/.*)?)", serve_api);
  http_->Options(R"(/api(/.*)?)", [cors](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    cors(res);
  });
  http_->set_error_handler([cors](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    auto body = error_body(res.status == 404 ? 404 : 500, res.status == 404 ? "not_found" : "internal",
                           "no such endpoint: " + req.path);
    res.set_content(body.dump(), "application/json; charset=utf-8");
    cors(res);
  });
}

int Server::bind() {
  if (options_.port == 0) return http_->bind_to_any_port(options_.host);
  return http_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
}

void Server::serve() { http_->listen_after_bind(); }

bool Server::listen() {
  if (bind() < 0) return false;
  serve();
  return true;
}

void Server::stop() {
  if (http_ && http_->is_running()) http_->stop();
}

bool Server::running() const { return http_->is_running(); }

}  // namespace policystory::api
