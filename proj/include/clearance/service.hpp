#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "clearance/engine.hpp"

namespace clearance {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Read-only query service over one immutable scene index.
///
///   GET  /health   -> "ok"
///   GET  /scene    -> scene document
///   POST /query    {"path": [[x, y], ...], "c": number} -> clearance report
///   POST /nearest  {"segment": [[x, y], [x, y]]}         -> nearest obstacle
///
/// Invalid input yields 400 with an error document; c <= 0 and nearest
/// queries on an empty scene yield 422.
class ClearanceService {
 public:
  explicit ClearanceService(SceneIndex index);

  HttpResponse handle(std::string_view method, std::string_view path, const std::string& body) const;
  const SceneIndex& index() const { return index_; }

 private:
  HttpResponse query(const std::string& body) const;
  HttpResponse nearest(const std::string& body) const;

  SceneIndex index_;
  std::string scene_text_;
};

/// HTTP front end for a ClearanceService.
class HttpServer {
 public:
  explicit HttpServer(const ClearanceService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free one) and returns the port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace clearance
