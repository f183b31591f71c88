#include <doctest.h>

#include <httplib.h>

#include <thread>
#include <vector>

#include "clearance/scene_io.hpp"
#include "clearance/service.hpp"

using namespace clearance;

namespace {

ClearanceService square_service() {
  return ClearanceService(SceneIndex::build(validate_scene(
      {SimplePolygon(1, {{2, 2}, {3, 2}, {3, 3}, {2, 3}})})));
}

const std::string kDemoQuery = R"({"path":[[0,0],[5,0],[5,5]],"c":1})";

}  // namespace

TEST_CASE("service endpoints") {
  const auto svc = square_service();
  auto r = svc.handle("GET", "/health", "");
  CHECK(r.status == 200);
  CHECK(r.body == "ok");

  r = svc.handle("GET", "/scene", "");
  CHECK(r.status == 200);
  CHECK(parse_json(r.body)["polygons"][0]["id"] == 1);

  r = svc.handle("POST", "/query", kDemoQuery);
  CHECK(r.status == 200);
  Json j = parse_json(r.body);
  CHECK(j["verdict"] == "HasClearance");
  CHECK(j["min_clearance"] == 2.0);
  CHECK(j["per_segment"].size() == 2);

  r = svc.handle("POST", "/query", R"({"path":[[0,0],[5,0],[5,5]],"c":0})");
  CHECK(r.status == 422);
  CHECK(parse_json(r.body)["error"] == "InvalidClearance");
  CHECK(svc.handle("POST", "/query", R"({"path":[[0,0],[5,0]],"c":-2})").status == 422);

  r = svc.handle("POST", "/query", R"({"path":[[0,0],[0,0]],"c":1})");
  CHECK(r.status == 400);
  CHECK(parse_json(r.body)["field"] == "path");
  CHECK(svc.handle("POST", "/query", R"({"path":[[0,0]],"c":1})").status == 400);
  CHECK(svc.handle("POST", "/query", "not json").status == 400);
  CHECK(svc.handle("POST", "/query", R"({"path":[[0,0],[1,1]]})").status == 400);

  r = svc.handle("POST", "/nearest", R"({"segment":[[0,0],[5,0]]})");
  CHECK(r.status == 200);
  j = parse_json(r.body);
  CHECK(j["hit"] == false);
  CHECK(j["distance"] == 2.0);
  CHECK(j["polygon_id"] == 1);
  r = svc.handle("POST", "/nearest", R"({"segment":[[2.5,0],[2.5,5]]})");
  CHECK(parse_json(r.body)["hit"] == true);
  CHECK(svc.handle("POST", "/nearest", R"({"segment":[[1,1],[1,1]]})").status == 400);

  CHECK(svc.handle("GET", "/nope", "").status == 404);
}

TEST_CASE("nearest on an empty scene is unprocessable") {
  const ClearanceService svc(SceneIndex::build(validate_scene({})));
  CHECK(svc.handle("POST", "/nearest", R"({"segment":[[0,0],[1,0]]})").status == 422);
  const auto r = svc.handle("POST", "/query", R"({"path":[[0,0],[1,0]],"c":3})");
  CHECK(r.status == 200);
  CHECK(parse_json(r.body)["min_clearance"] == "unbounded");
}

TEST_CASE("responses match the library report") {
  const auto svc = square_service();
  const auto report = svc.index().path_clearance(PolyPath({{0, 0}, {5, 0}, {5, 5}}), 1);
  CHECK(svc.handle("POST", "/query", kDemoQuery).body == to_text(report_to_json(report)));
}

TEST_CASE("http server handles concurrent clients") {
  const auto svc = square_service();
  HttpServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });

  httplib::Client probe("127.0.0.1", port);
  for (int i = 0; i < 100; ++i) {
    if (auto res = probe.Get("/health"); res && res->status == 200) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  auto health = probe.Get("/health");
  REQUIRE(health);
  CHECK(health->body == "ok");
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  const std::string expected = svc.handle("POST", "/query", kDemoQuery).body;
  std::vector<std::string> bodies(8);
  std::vector<int> statuses(8);
  {
    std::vector<std::jthread> clients;
    for (int t = 0; t < 8; ++t) {
      clients.emplace_back([&, t] {
        httplib::Client cli("127.0.0.1", port);
        for (int i = 0; i < 10; ++i) {
          auto res = cli.Post("/query", kDemoQuery, "application/json");
          statuses[t] = res ? res->status : -1;
          bodies[t] = res ? res->body : "";
          if (!res || res->body != expected) return;
        }
      });
    }
  }
  for (int t = 0; t < 8; ++t) {
    CHECK(statuses[t] == 200);
    CHECK(bodies[t] == expected);
  }
  auto bad = probe.Post("/query", R"({"path":[[0,0],[5,0]],"c":0})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 422);
  server.stop();
  loop.join();
}

TEST_CASE("command line and service produce the same report") {
  const std::string data = CLEARANCE_DATA;
  const ClearanceService svc(SceneIndex::build(scene_from_json(read_json_file(data + "/two_squares.json"))));
  const std::string cmd = std::string(CLEARANCE_CLI) + " query --scene " + data +
                          "/two_squares.json --path " + data + "/demo_path.json --c 1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  pclose(pipe);
  const auto pf = path_from_json(read_json_file(data + "/demo_path.json"));
  Json body = {{"path", Json::array()}, {"c", 1}};
  for (const Point p : pf.path.vertices()) body["path"].push_back(point_to_json(p));
  const auto r = svc.handle("POST", "/query", to_text(body));
  CHECK(out == r.body + "\n");
}
