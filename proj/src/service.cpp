#include "clearance/service.hpp"

#include <httplib.h>

#include "clearance/error.hpp"
#include "clearance/scene_io.hpp"

namespace clearance {

namespace {

HttpResponse json_response(int status, const Json& doc) { return {status, to_text(doc)}; }

int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidClearance:
    case ErrorKind::EmptyScene:
      return 422;
    default:
      return 400;
  }
}

}  // namespace

ClearanceService::ClearanceService(SceneIndex index)
    : index_(std::move(index)), scene_text_(to_text(scene_to_json(index_.scene()))) {}

HttpResponse ClearanceService::handle(std::string_view method, std::string_view path,
                                      const std::string& body) const {
  if (method == "GET" && path == "/health") return {200, "ok", "text/plain"};
  if (method == "GET" && path == "/scene") return {200, scene_text_};
  if (method == "POST" && path == "/query") return query(body);
  if (method == "POST" && path == "/nearest") return nearest(body);
  return json_response(404, {{"error", "NotFound"}, {"message", "no such endpoint"}});
}

HttpResponse ClearanceService::query(const std::string& body) const {
  try {
    const Json doc = parse_json(body);
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "$: expected an object", {}, "$");
    auto path_it = doc.find("path");
    if (path_it == doc.end()) throw Error(ErrorKind::ParseError, "path: missing", {}, "path");
    const PolyPath path = path_from_vertices(*path_it, "path");
    auto c_it = doc.find("c");
    if (c_it == doc.end()) throw Error(ErrorKind::ParseError, "c: missing", {}, "c");
    if (!c_it->is_number()) throw Error(ErrorKind::ParseError, "c: expected a number", {}, "c");
    const auto report = index_.path_clearance(path, c_it->get<double>());
    return json_response(200, report_to_json(report));
  } catch (const Error& e) {
    return json_response(status_for(e), error_to_json(e));
  }
}

HttpResponse ClearanceService::nearest(const std::string& body) const {
  try {
    const Json doc = parse_json(body);
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "$: expected an object", {}, "$");
    auto it = doc.find("segment");
    if (it == doc.end()) throw Error(ErrorKind::ParseError, "segment: missing", {}, "segment");
    const Segment s = segment_from_json(*it, "segment");
    return json_response(200, nearest_to_json(index_.nearest_polygon_to_segment(s)));
  } catch (const Error& e) {
    return json_response(status_for(e), error_to_json(e));
  }
}

struct HttpServer::Impl {
  explicit Impl(const ClearanceService& s) : service(s) {}
  const ClearanceService& service;
  httplib::Server server;
};

HttpServer::HttpServer(const ClearanceService& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Get("/health", forward);
  srv.Get("/scene", forward);
  srv.Post("/query", forward);
  srv.Post("/nearest", forward);
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace clearance
