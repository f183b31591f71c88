#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "clearance/edge_bvh.hpp"
#include "clearance/engine.hpp"
#include "clearance/scene.hpp"

namespace clearance {

/// Seeded generator with platform-independent real draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  // Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// m pairwise disjoint star-shaped polygons with about target_n vertices in
/// total, each inside its own disc; discs cover about 30% of the box.
/// Throws Error{PlacementFailure} when the discs do not fit and
/// Error{InvalidGeometry} unless target_n >= 3m.
Scene generate_scene(std::uint64_t seed, std::size_t m, std::size_t target_n, const Box& bbox);

/// Box of side 10 * sqrt(m) at the origin, the benchmark scene density.
Box bench_box(std::size_t m);

/// Path of `vertices` uniform points in the box; may cross obstacles.
PolyPath random_path(Rng& rng, std::size_t vertices, const Box& bbox);

/// Random walk through free space with steps of length up to `max_step`.
/// Every vertex and segment avoids all obstacles.
PolyPath random_free_path(Rng& rng, const SceneIndex& index, std::size_t vertices,
                          const Box& bbox, double max_step);

}  // namespace clearance
