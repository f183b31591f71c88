#include "clearance/engine.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>
#include <tuple>

#include "clearance/error.hpp"

namespace clearance {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool parse_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// One candidate for the clearance of a segment.
struct Term {
  bool found = false;
  PolygonId polygon_id = 0;
  double distance = std::numeric_limits<double>::infinity();
  Point path_point;
  Point obstacle_point;
};

void keep_better(Term& best, const Term& cand) {
  if (!cand.found) return;
  if (!best.found ||
      std::tie(cand.distance, cand.polygon_id) < std::tie(best.distance, best.polygon_id)) {
    best = cand;
  }
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&f, w, threads, count] {
      for (std::size_t i = w; i < count; i += threads) f(i);
    });
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::HasClearance ? "HasClearance" : "Violated";
}

TPolicy TPolicy::parse(std::string_view text) {
  TPolicy p;
  p.text_ = std::string(text);
  auto bad = [&]() {
    return Error(ErrorKind::InvalidBudget, "unknown t policy '" + std::string(text) +
                                               "' (expected n, n^<e> with 1<=e<=2, or n2cap:<bytes>)");
  };
  if (text == "n") {
    p.exponent_ = 1.0;
    return p;
  }
  if (text.starts_with("n^")) {
    double e = 0.0;
    if (!parse_double(text.substr(2), e) || !(e >= 1.0 && e <= 2.0)) throw bad();
    p.exponent_ = e;
    return p;
  }
  if (text.starts_with("n2cap:")) {
    const auto digits = text.substr(6);
    std::uint64_t bytes = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bytes);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) throw bad();
    p.exponent_ = 2.0;
    p.cap_bytes_ = bytes;
    return p;
  }
  throw bad();
}

double TPolicy::budget(std::size_t n) const {
  const double nn = static_cast<double>(n);
  double t = exponent_ == 1.0 ? nn : exponent_ == 2.0 ? nn * nn : std::pow(nn, exponent_);
  if (cap_bytes_) {
    t = std::min(t, static_cast<double>(*cap_bytes_ / kBytesPerHullVertex));
  }
  return std::clamp(t, nn, nn * nn);
}

SceneIndex SceneIndex::build(Scene scene, const IndexConfig& config) {
  const auto start = Clock::now();
  SceneIndex idx;
  idx.config_ = config;
  idx.scene_ = std::make_shared<const Scene>(std::move(scene));
  const Scene& sc = *idx.scene_;
  BuildStats& st = idx.stats_;
  st.n = sc.vertex_count();
  st.m = sc.polygon_count();

  auto t0 = Clock::now();
  idx.d1_ = std::make_shared<const PointLocationIndex>(sc, config.boundary_tolerance);
  st.point_location_ms = elapsed_ms(t0);
  st.trapezoids = idx.d1_->trapezoid_count();
  st.dag_nodes = idx.d1_->node_count();
  st.dag_depth = idx.d1_->depth();

  t0 = Clock::now();
  auto bvh = std::make_shared<const EdgeBvh>(scene_edges(sc), config.bvh_leaf_size);
  idx.d2_ = std::make_shared<const SegmentEmptinessIndex>(bvh);
  idx.d3_ = std::make_shared<const NearestSiteIndex>(bvh);
  st.bvh_ms = elapsed_ms(t0);
  st.bvh_nodes = bvh->nodes().size();

  t0 = Clock::now();
  if (st.n > 0) {
    st.t = config.t_policy.budget(st.n);
    idx.d4_ = std::make_shared<const PartitionTree>(scene_vertices(sc), st.t);
  } else {
    idx.d4_ = std::make_shared<const PartitionTree>();
  }
  st.partition_ms = elapsed_ms(t0);
  const auto& ps = idx.d4_->stats();
  st.tree_nodes = ps.nodes;
  st.leaf_size = ps.leaf_size;
  st.hull_levels = ps.hull_levels;
  st.stored_hull_vertices = ps.stored_hull_vertices;
  st.hull_budget = ps.budget;

  // Rough footprint of the built structures.
  st.memory_bytes = st.trapezoids * 80 + st.dag_nodes * 40 + st.n * 48 +
                    st.bvh_nodes * sizeof(EdgeBvh::Node) + st.n * sizeof(EdgeItem) +
                    st.tree_nodes * sizeof(PartitionTree::Node) + st.n * sizeof(TaggedPoint) +
                    st.stored_hull_vertices * TPolicy::kBytesPerHullVertex;
  st.build_ms = elapsed_ms(start);
  return idx;
}

NearestResult SceneIndex::nearest_polygon_to_line(const Line& l) const {
  if (scene_->empty()) throw Error(ErrorKind::EmptyScene, "scene has no obstacles");
  if (auto hit = d2_->line_intersects(l)) {
    return {true, hit->polygon_id, 0.0, hit->point, hit->point};
  }
  const auto r = d4_->closest_to_line(l);
  const Point p = r.point.p;
  const Point foot = l.anchor() + dot(p - l.anchor(), l.direction()) * l.direction();
  return {false, r.point.polygon_id, r.distance, foot, p};
}

NearestResult SceneIndex::nearest_polygon_to_segment(const Segment& s) const {
  if (scene_->empty()) throw Error(ErrorKind::EmptyScene, "scene has no obstacles");
  for (const Point end : {s.a(), s.b()}) {
    const auto loc = d1_->locate(end);
    if (loc.kind != Location::FreeSpace) return {true, *loc.polygon_id, 0.0, end, end};
  }
  if (auto hit = d2_->segment_intersects(s)) {
    return {true, hit->polygon_id, 0.0, hit->point, hit->point};
  }
  Term best;
  for (const Point end : {s.a(), s.b()}) {
    const auto r = d3_->nearest_polygon_to_point(end);
    keep_better(best, {true, r.polygon_id, r.distance, end, r.witness});
  }
  if (const auto r = d4_->closest_in_slab(s); r.found) {
    keep_better(best, {true, r.point.polygon_id, r.distance,
                       dist_point_segment(r.point.p, s).closest, r.point.p});
  }
  return {false, best.polygon_id, best.distance, best.path_point, best.obstacle_point};
}

ClearanceReport SceneIndex::path_clearance(const PolyPath& path, double c) const {
  return path_clearance(path, c, config_);
}

ClearanceReport SceneIndex::path_clearance(const PolyPath& path, double c,
                                           const IndexConfig& config) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidClearance, "clearance must be finite and positive");
  }
  return evaluate(path, c, config.verdict_only, config.parallel, config.threads);
}

double SceneIndex::min_clearance(const PolyPath& path) const {
  return evaluate(path, 0.0, false, config_.parallel, config_.threads).min_clearance;
}

ClearanceReport SceneIndex::evaluate(const PolyPath& path, double c, bool verdict_only,
                                     bool parallel, unsigned threads) const {
  ClearanceReport rep;
  rep.clearance_param = c;
  const auto verts = path.vertices();
  const std::size_t k = path.segment_count();

  auto violated_at = [&](Point p, Point q, PolygonId id) {
    rep.verdict = Verdict::Violated;
    rep.min_clearance = 0.0;
    rep.intersection = true;
    rep.witness = Witness{p, q, id};
    return rep;
  };

  if (scene_->empty()) {
    for (std::size_t j = 0; j < k; ++j) rep.per_segment.push_back({j, rep.min_clearance, {}});
    return rep;
  }

  // Emptiness first: any vertex in an obstacle, then any segment meeting one.
  for (const Point v : verts) {
    const auto loc = d1_->locate(v);
    if (loc.kind != Location::FreeSpace) return violated_at(v, v, *loc.polygon_id);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (auto hit = d2_->segment_intersects(path.segment(j))) {
      return violated_at(hit->point, hit->point, hit->polygon_id);
    }
  }

  auto vertex_term = [&](std::size_t i) {
    const auto r = d3_->nearest_polygon_to_point(verts[i]);
    return Term{true, r.polygon_id, r.distance, verts[i], r.witness};
  };
  auto slab_term = [&](std::size_t j) {
    const Segment s = path.segment(j);
    const auto r = d4_->closest_in_slab(s);
    if (!r.found) return Term{};
    return Term{true, r.point.polygon_id, r.distance, dist_point_segment(r.point.p, s).closest,
                r.point.p};
  };

  Term overall;
  auto record = [&](std::size_t j, const Term& a, const Term& b, const Term& slab) {
    Term seg;
    keep_better(seg, a);
    keep_better(seg, b);
    keep_better(seg, slab);
    rep.per_segment.push_back({j, seg.distance, seg.polygon_id});
    if (seg.distance < overall.distance || !overall.found) overall = seg;
  };

  if (verdict_only && c > 0.0) {
    Term a = vertex_term(0);
    for (std::size_t j = 0; j < k; ++j) {
      const Term b = vertex_term(j + 1);
      record(j, a, b, slab_term(j));
      if (overall.distance < c) {
        rep.exact = j + 1 == k;
        if (!rep.exact) rep.per_segment.clear();
        break;
      }
      a = b;
    }
  } else {
    std::vector<Term> vterms(k + 1);
    std::vector<Term> sterms(k);
    auto job = [&](std::size_t i) {
      if (i <= k) {
        vterms[i] = vertex_term(i);
      } else {
        sterms[i - k - 1] = slab_term(i - k - 1);
      }
    };
    if (parallel) {
      parallel_for(2 * k + 1, threads, job);
    } else {
      for (std::size_t i = 0; i < 2 * k + 1; ++i) job(i);
    }
    for (std::size_t j = 0; j < k; ++j) record(j, vterms[j], vterms[j + 1], sterms[j]);
  }

  rep.min_clearance = overall.distance;
  rep.witness = Witness{overall.path_point, overall.obstacle_point, overall.polygon_id};
  rep.intersection = overall.distance == 0.0;
  rep.verdict = rep.min_clearance >= c ? Verdict::HasClearance : Verdict::Violated;
  return rep;
}

}  // namespace clearance
