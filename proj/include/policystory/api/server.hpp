#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include "policystory/api/handler.hpp"

namespace httplib {
class Server;
}

namespace policystory::api {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path store_root;
  std::string cors_origin = "*";  // empty disables CORS headers
  std::ostream* access_log = nullptr;  // one JSON line per request
};

class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();

  // Binds and serves until stop(). Returns false if the bind failed.
  bool listen();
  // Binds only; returns the bound port (or -1). Follow with serve().
  int bind();
  void serve();
  void stop();
  bool running() const;

  // Re-reads the store and swaps the snapshot in; in-flight requests keep
  // the snapshot they started with.
  void reload();
  std::shared_ptr<const Snapshot> snapshot() const;

 private:
  void install_routes();

  ServerOptions options_;
  std::unique_ptr<httplib::Server> http_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex log_mutex_;
};

}  // namespace policystory::api
