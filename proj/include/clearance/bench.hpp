#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace clearance {

struct BenchConfig {
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::vector<std::string> policies{"n", "n^1.25", "n^1.5", "n2cap:64000000"};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::size_t k = 16;              // path vertices
  std::size_t paths = 200;         // timed paths per indexed configuration
  std::size_t brute_paths = 10;    // timed paths for the brute-force baseline
  std::size_t vertices_per_polygon = 20;
  double clearance = 1.0;
  double max_step = 5.0;           // random-walk step bound for the paths
  bool include_brute = true;
};

/// One CSV row: a (seed, n, policy) configuration or the brute baseline.
struct BenchRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::string t_policy;
  double t = 0.0;
  std::string method;  // "index" or "brute"
  double build_ms = 0.0;
  double mean_query_us = 0.0;
  double p95_query_us = 0.0;
  std::size_t paths = 0;
  std::size_t violated = 0;
  std::size_t trapezoids = 0;
  std::size_t bvh_nodes = 0;
  std::size_t tree_nodes = 0;
  std::size_t leaf_size = 0;
  std::size_t hull_levels = 0;
  std::size_t stored_hull_vertices = 0;
  std::size_t memory_bytes = 0;
};

std::string bench_csv_header();
std::string to_csv(const BenchRecord& r);

/// Runs the sweep, calling `emit` as each row completes.
void run_bench(const BenchConfig& config, const std::function<void(const BenchRecord&)>& emit);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace clearance
