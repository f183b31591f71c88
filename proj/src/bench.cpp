#include "clearance/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "clearance/engine.hpp"
#include "clearance/generator.hpp"
#include "clearance/oracle.hpp"

namespace clearance {

namespace {

using Clock = std::chrono::steady_clock;

struct Timing {
  double mean = 0.0;
  double p95 = 0.0;
};

Timing summarize(std::vector<double> us) {
  Timing t;
  if (us.empty()) return t;
  t.mean = std::accumulate(us.begin(), us.end(), 0.0) / static_cast<double>(us.size());
  std::sort(us.begin(), us.end());
  const auto idx = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(us.size()))) - 1;
  t.p95 = us[std::min(idx, us.size() - 1)];
  return t;
}

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

}  // namespace

std::string bench_csv_header() {
  return "seed,n,m,k,t_policy,t,method,build_ms,mean_query_us,p95_query_us,paths,violated,"
         "trapezoids,bvh_nodes,tree_nodes,leaf_size,hull_levels,stored_hull_vertices,memory_bytes";
}

std::string to_csv(const BenchRecord& r) {
  std::ostringstream out;
  out.precision(6);
  out << r.seed << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.t_policy << ','
      << std::fixed << r.t << ',' << r.method << ',' << r.build_ms << ',' << r.mean_query_us << ','
      << r.p95_query_us << ',' << r.paths << ',' << r.violated << ',' << r.trapezoids << ','
      << r.bvh_nodes << ',' << r.tree_nodes << ',' << r.leaf_size << ',' << r.hull_levels << ','
      << r.stored_hull_vertices << ',' << r.memory_bytes;
  return out.str();
}

void run_bench(const BenchConfig& config, const std::function<void(const BenchRecord&)>& emit) {
  for (const std::uint64_t seed : config.seeds) {
    for (const std::size_t n : config.sizes) {
      const std::size_t m = std::max<std::size_t>(1, n / config.vertices_per_polygon);
      const Box box = bench_box(m);
      const Scene scene = generate_scene(seed, m, n, box);

      // Paths come from a fixed-policy index so every row sees the same ones.
      std::vector<PolyPath> paths;
      {
        const SceneIndex probe = SceneIndex::build(scene);
        Rng rng(seed * 0x9e3779b97f4a7c15ULL + n);
        for (std::size_t i = 0; i < config.paths; ++i) {
          paths.push_back(random_free_path(rng, probe, config.k, box, config.max_step));
        }
      }

      for (const auto& policy : config.policies) {
        IndexConfig ic;
        ic.t_policy = TPolicy::parse(policy);
        const SceneIndex idx = SceneIndex::build(scene, ic);
        std::vector<double> us;
        us.reserve(paths.size());
        std::size_t violated = 0;
        for (const auto& path : paths) {
          const auto start = Clock::now();
          const auto rep = idx.path_clearance(path, config.clearance);
          us.push_back(micros_since(start));
          violated += rep.verdict == Verdict::Violated;
        }
        const auto timing = summarize(std::move(us));
        const auto& st = idx.stats();
        emit({seed, n, m, config.k, policy, st.t, "index", st.build_ms, timing.mean, timing.p95,
              paths.size(), violated, st.trapezoids, st.bvh_nodes, st.tree_nodes, st.leaf_size,
              st.hull_levels, st.stored_hull_vertices, st.memory_bytes});
      }

      if (config.include_brute) {
        std::vector<double> us;
        std::size_t violated = 0;
        const std::size_t count = std::min(config.brute_paths, paths.size());
        for (std::size_t i = 0; i < count; ++i) {
          const auto start = Clock::now();
          const auto rep = oracle_clearance(scene, paths[i]);
          us.push_back(micros_since(start));
          violated += rep.min_clearance < config.clearance;
        }
        const auto timing = summarize(std::move(us));
        BenchRecord r;
        r.seed = seed;
        r.n = n;
        r.m = m;
        r.k = config.k;
        r.t_policy = "none";
        r.method = "brute";
        r.mean_query_us = timing.mean;
        r.p95_query_us = timing.p95;
        r.paths = count;
        r.violated = violated;
        emit(r);
      }
    }
  }
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace clearance
