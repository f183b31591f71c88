#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "clearance/bench.hpp"
#include "clearance/check.hpp"
#include "clearance/engine.hpp"
#include "clearance/error.hpp"
#include "clearance/generator.hpp"
#include "clearance/scene_io.hpp"
#include "clearance/service.hpp"

using namespace clearance;

namespace {

constexpr int kInputError = 2;

clearance::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("clearance");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("CLEARANCE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int report_error(const Error& e) {
  spdlog::error("{}", e.what());
  std::cerr << to_text(error_to_json(e)) << '\n';
  return kInputError;
}

SceneIndex load_index(const std::string& scene_file, const std::string& policy) {
  IndexConfig cfg;
  cfg.t_policy = TPolicy::parse(policy);
  Scene scene = scene_from_json(read_json_file(scene_file));
  spdlog::info("scene {}: m={} n={}", scene_file, scene.polygon_count(), scene.vertex_count());
  auto idx = SceneIndex::build(std::move(scene), cfg);
  spdlog::info("index built in {:.3f} ms (t={})", idx.stats().build_ms, idx.stats().t);
  return idx;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Path clearance queries against polygonal obstacles"};
  app.require_subcommand(1);

  std::string scene_file;
  std::string path_file;
  std::string policy = "n^1.5";
  std::optional<double> c;
  std::uint64_t seed = 1;
  std::string out_file;

  auto* build = app.add_subcommand("build", "Validate a scene, build the index, print build statistics");
  build->add_option("--scene", scene_file, "Scene JSON file")->required();
  build->add_option("--t-policy", policy, "Space budget: n, n^<e>, n2cap:<bytes>");

  bool parallel = false;
  bool verdict_only = false;
  auto* query = app.add_subcommand("query", "Check a path for clearance c; exit 0 if it has it, 1 if not");
  query->add_option("--scene", scene_file, "Scene JSON file")->required();
  query->add_option("--path", path_file, "Path JSON file")->required();
  query->add_option("--c", c, "Clearance (overrides the path file)");
  query->add_option("--t-policy", policy, "Space budget");
  query->add_flag("--parallel", parallel, "Evaluate segments on several threads");
  query->add_flag("--verdict-only", verdict_only, "Stop once the clearance is known to be violated");

  BenchConfig bench_cfg;
  bool smoke = false;
  auto* bench = app.add_subcommand("bench", "Benchmark sweep, CSV on stdout");
  bench->add_flag("--smoke", smoke, "Only n=1000, one seed, few paths");
  bench->add_option("--sizes", bench_cfg.sizes, "Total vertex counts");
  bench->add_option("--policies", bench_cfg.policies, "t policies");
  bench->add_option("--seeds", bench_cfg.seeds, "Scene seeds");
  bench->add_option("--paths", bench_cfg.paths, "Timed paths per configuration");
  bench->add_option("--brute-paths", bench_cfg.brute_paths, "Timed paths for the brute baseline");
  bench->add_option("--k", bench_cfg.k, "Path vertex count");
  bench->add_option("--out", out_file, "Write CSV here instead of stdout");

  CheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "Randomized agreement checks against brute force");
  check->add_option("--trials", check_cfg.trials, "Trials per suite");
  check->add_option("--seed", check_cfg.seed, "Random seed");
  check->add_flag("--inject-fault", check_cfg.inject_fault, "Break the segment query on purpose");

  std::size_t gen_m = 10;
  std::size_t gen_n = 200;
  double side = 0.0;
  auto* generate = app.add_subcommand("generate", "Write a random scene as JSON");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--m", gen_m, "Polygon count");
  generate->add_option("--n", gen_n, "Approximate total vertex count");
  generate->add_option("--side", side, "Square side (default 10*sqrt(m))");
  generate->add_option("--out", out_file, "Write here instead of stdout");

  std::string bind = "127.0.0.1:8080";
  auto* serve = app.add_subcommand("serve", "Serve queries over HTTP");
  serve->add_option("--scene", scene_file, "Scene JSON file")->required();
  serve->add_option("--t-policy", policy, "Space budget");
  serve->add_option("--bind", bind, "host:port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*build) {
      const auto idx = load_index(scene_file, policy);
      std::cout << stats_to_json(idx.stats(), policy).dump(2) << '\n';
      return 0;
    }

    if (*query) {
      const auto idx = load_index(scene_file, policy);
      const PathFile pf = path_from_json(read_json_file(path_file));
      const auto clearance = c ? c : pf.c;
      if (!clearance) throw Error(ErrorKind::ParseError, "c: missing (use --c or the path file)", {}, "c");
      IndexConfig cfg = idx.config();
      cfg.parallel = parallel;
      cfg.verdict_only = verdict_only;
      const auto report = idx.path_clearance(pf.path, *clearance, cfg);
      std::cout << to_text(report_to_json(report)) << '\n';
      return report.verdict == Verdict::HasClearance ? 0 : 1;
    }

    if (*bench) {
      if (smoke) {
        bench_cfg.sizes = {1000};
        bench_cfg.seeds = {1};
        bench_cfg.paths = std::min<std::size_t>(bench_cfg.paths, 20);
        bench_cfg.brute_paths = std::min<std::size_t>(bench_cfg.brute_paths, 5);
      }
      std::ofstream file;
      if (!out_file.empty()) file.open(out_file);
      std::ostream& out = out_file.empty() ? std::cout : file;
      out << bench_csv_header() << '\n';
      run_bench(bench_cfg, [&out](const BenchRecord& r) {
        out << to_csv(r) << std::endl;
        spdlog::info("n={} policy={} method={} mean={:.1f}us", r.n, r.t_policy, r.method, r.mean_query_us);
      });
      return 0;
    }

    if (*check) {
      const auto results = run_checks(check_cfg);
      std::size_t failed = 0;
      for (const auto& r : results) {
        std::cout << (r.failed == 0 ? "PASS " : "FAIL ") << r.name << ": " << r.passed << " passed, "
                  << r.failed << " failed";
        if (r.failed) std::cout << " (first: " << r.first_failure << ")";
        std::cout << '\n';
        failed += r.failed;
      }
      return failed == 0 ? 0 : 1;
    }

    if (*generate) {
      if (side <= 0.0) side = bench_box(gen_m).hi.x;
      const Scene scene = generate_scene(seed, gen_m, gen_n, Box{{0, 0}, {side, side}});
      const std::string text = scene_to_json(scene).dump(1);
      if (out_file.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream(out_file) << text << '\n';
      }
      return 0;
    }

    if (*serve) {
      const auto colon = bind.rfind(':');
      if (colon == std::string::npos) {
        throw Error(ErrorKind::ParseError, "bind: expected host:port", {}, "bind");
      }
      const std::string host = bind.substr(0, colon);
      int port = 0;
      try {
        port = std::stoi(bind.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bind: bad port", {}, "bind");
      }
      const ClearanceService service(load_index(scene_file, policy));
      HttpServer server(service);
      const int bound = server.bind(host, port);
      if (bound < 0) {
        spdlog::error("cannot bind {}", bind);
        return kInputError;
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      spdlog::warn("serving on {}:{}", host, bound);
      server.listen();
      g_server = nullptr;
      return 0;
    }
  } catch (const Error& e) {
    return report_error(e);
  }
  return 0;
}
