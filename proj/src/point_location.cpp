#include "clearance/point_location.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace clearance {

namespace {

double point_segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  const Point foot = t == 0.0 ? a : (t == 1.0 ? b : a + t * d);
  return distance(p, foot);
}

}  // namespace

PointLocationIndex::PointLocationIndex() {
  traps_.emplace_back();
  traps_[0].node = 0;
  nodes_.push_back(Node{NodeKind::Leaf, {}, 0, kNone, kNone});
}

PointLocationIndex::PointLocationIndex(const Scene& scene, double boundary_tolerance,
                                       std::uint64_t seed)
    : PointLocationIndex() {
  tolerance_ = boundary_tolerance;
  edges_.reserve(scene.vertex_count());
  for (const auto& poly : scene.polygons()) {
    const std::size_t h = poly.size();
    for (std::size_t i = 0; i < h; ++i) {
      const Point a = poly.vertex(i);
      const Point b = poly.vertex((i + 1) % h);
      // Counterclockwise boundary: the interior is left of a -> b.
      if (lex_less(a, b)) {
        edges_.push_back(Edge{a, b, poly.id(), true});
      } else {
        edges_.push_back(Edge{b, a, poly.id(), false});
      }
    }
  }
  std::vector<std::int32_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  traps_.reserve(3 * edges_.size() + 1);
  nodes_.reserve(6 * edges_.size() + 1);
  for (std::int32_t e : order) insert(e);
}

bool PointLocationIndex::above(const Edge& e, Point r) const {
  return orientation(e.p, e.q, r) > 0;
}

std::int32_t PointLocationIndex::find(Point p, const Edge* inserting) const {
  std::int32_t n = 0;
  while (nodes_[n].kind != NodeKind::Leaf) {
    const Node& node = nodes_[n];
    if (node.kind == NodeKind::XNode) {
      n = lex_less(p, node.point) ? node.left : node.right;
    } else {
      const Edge& e = edges_[node.index];
      int o = orientation(e.p, e.q, p);
      // A segment sharing its left endpoint with e is ordered by slope.
      if (o == 0 && inserting != nullptr) o = orientation(e.p, e.q, inserting->q);
      n = o >= 0 ? node.left : node.right;
    }
  }
  return nodes_[n].index;
}

std::int32_t PointLocationIndex::new_trapezoid(std::int32_t top, std::int32_t bottom) {
  Trapezoid t;
  t.top = top;
  t.bottom = bottom;
  traps_.push_back(t);
  return static_cast<std::int32_t>(traps_.size() - 1);
}

std::int32_t PointLocationIndex::leaf_for(std::int32_t trap) {
  if (traps_[trap].node == kNone) {
    nodes_.push_back(Node{NodeKind::Leaf, {}, trap, kNone, kNone});
    traps_[trap].node = static_cast<std::int32_t>(nodes_.size() - 1);
  }
  return traps_[trap].node;
}

void PointLocationIndex::replace_right(std::int32_t trap, std::int32_t old_id,
                                       std::int32_t new_id) {
  if (trap == kNone) return;
  auto& t = traps_[trap];
  if (t.upper_right == old_id) t.upper_right = new_id;
  if (t.lower_right == old_id) t.lower_right = new_id;
}

void PointLocationIndex::replace_left(std::int32_t trap, std::int32_t old_id,
                                      std::int32_t new_id) {
  if (trap == kNone) return;
  auto& t = traps_[trap];
  if (t.upper_left == old_id) t.upper_left = new_id;
  if (t.lower_left == old_id) t.lower_left = new_id;
}

void PointLocationIndex::insert(std::int32_t si) {
  const Edge s = edges_[si];

  // Trapezoids crossed by s, left to right.
  std::vector<std::int32_t> crossed{find(s.p, &s)};
  for (;;) {
    const Trapezoid& cur = traps_[crossed.back()];
    if (!cur.has_right || !lex_less(cur.rightp, s.q)) break;
    crossed.push_back(above(s, cur.rightp) ? cur.lower_right : cur.upper_right);
  }
  const std::size_t k = crossed.size();
  std::vector<Trapezoid> old;
  old.reserve(k);
  for (std::int32_t id : crossed) old.push_back(traps_[id]);
  const Trapezoid first = old.front();
  const Trapezoid last = old.back();
  const bool has_a = !(first.has_left && first.leftp == s.p);
  const bool has_b = !(last.has_right && last.rightp == s.q);

  // Pieces above (upper) and below (lower) s. A wall at an old rightp
  // survives only on the side of s where that point lies; on the other side
  // consecutive pieces merge.
  std::vector<std::int32_t> upper(k);
  std::vector<std::int32_t> lower(k);
  std::int32_t cu = new_trapezoid(first.top, si);
  std::int32_t cl = new_trapezoid(si, first.bottom);
  for (std::int32_t id : {cu, cl}) {
    traps_[id].leftp = s.p;
    traps_[id].has_left = true;
  }
  upper[0] = cu;
  lower[0] = cl;
  for (std::size_t j = 1; j < k; ++j) {
    const Trapezoid& prev = old[j - 1];
    const Trapezoid& cur = old[j];
    const Point r = prev.rightp;
    if (above(s, r)) {
      traps_[cu].rightp = r;
      traps_[cu].has_right = true;
      const std::int32_t nu = new_trapezoid(cur.top, si);
      traps_[nu].leftp = r;
      traps_[nu].has_left = true;
      if (prev.upper_right != crossed[j]) {
        traps_[cu].upper_right = prev.upper_right;
        replace_left(prev.upper_right, crossed[j - 1], cu);
      } else {
        traps_[cu].upper_right = nu;
      }
      traps_[cu].lower_right = nu;
      if (cur.upper_left != crossed[j - 1]) {
        traps_[nu].upper_left = cur.upper_left;
        replace_right(cur.upper_left, crossed[j], nu);
      } else {
        traps_[nu].upper_left = cu;
      }
      traps_[nu].lower_left = cu;
      cu = nu;
    } else {
      traps_[cl].rightp = r;
      traps_[cl].has_right = true;
      const std::int32_t nl = new_trapezoid(si, cur.bottom);
      traps_[nl].leftp = r;
      traps_[nl].has_left = true;
      if (prev.lower_right != crossed[j]) {
        traps_[cl].lower_right = prev.lower_right;
        replace_left(prev.lower_right, crossed[j - 1], cl);
      } else {
        traps_[cl].lower_right = nl;
      }
      traps_[cl].upper_right = nl;
      if (cur.lower_left != crossed[j - 1]) {
        traps_[nl].lower_left = cur.lower_left;
        replace_right(cur.lower_left, crossed[j], nl);
      } else {
        traps_[nl].lower_left = cl;
      }
      traps_[nl].upper_left = cl;
      cl = nl;
    }
    upper[j] = cu;
    lower[j] = cl;
  }
  for (std::int32_t id : {cu, cl}) {
    traps_[id].rightp = s.q;
    traps_[id].has_right = true;
  }

  // Left end.
  std::int32_t piece_a = kNone;
  const std::int32_t u0 = upper[0];
  const std::int32_t l0 = lower[0];
  if (has_a) {
    piece_a = new_trapezoid(first.top, first.bottom);
    auto& a = traps_[piece_a];
    a.leftp = first.leftp;
    a.has_left = first.has_left;
    a.rightp = s.p;
    a.has_right = true;
    a.upper_left = first.upper_left;
    a.lower_left = first.lower_left;
    a.upper_right = u0;
    a.lower_right = l0;
    replace_right(first.upper_left, crossed[0], piece_a);
    replace_right(first.lower_left, crossed[0], piece_a);
    traps_[u0].upper_left = traps_[u0].lower_left = piece_a;
    traps_[l0].upper_left = traps_[l0].lower_left = piece_a;
  } else {
    const bool top_starts = first.top != kNone && edges_[first.top].p == s.p;
    const bool bottom_starts = first.bottom != kNone && edges_[first.bottom].p == s.p;
    if (top_starts && bottom_starts) {
      // Wedge on both sides: no left neighbours.
    } else if (top_starts) {
      traps_[l0].upper_left = first.upper_left;
      traps_[l0].lower_left = first.lower_left;
      replace_right(first.upper_left, crossed[0], l0);
      replace_right(first.lower_left, crossed[0], l0);
    } else if (bottom_starts) {
      traps_[u0].upper_left = first.upper_left;
      traps_[u0].lower_left = first.lower_left;
      replace_right(first.upper_left, crossed[0], u0);
      replace_right(first.lower_left, crossed[0], u0);
    } else {
      traps_[u0].upper_left = traps_[u0].lower_left = first.upper_left;
      replace_right(first.upper_left, crossed[0], u0);
      traps_[l0].upper_left = traps_[l0].lower_left = first.lower_left;
      replace_right(first.lower_left, crossed[0], l0);
    }
  }

  // Right end.
  std::int32_t piece_b = kNone;
  if (has_b) {
    piece_b = new_trapezoid(last.top, last.bottom);
    auto& b = traps_[piece_b];
    b.leftp = s.q;
    b.has_left = true;
    b.rightp = last.rightp;
    b.has_right = last.has_right;
    b.upper_right = last.upper_right;
    b.lower_right = last.lower_right;
    b.upper_left = cu;
    b.lower_left = cl;
    replace_left(last.upper_right, crossed[k - 1], piece_b);
    replace_left(last.lower_right, crossed[k - 1], piece_b);
    traps_[cu].upper_right = traps_[cu].lower_right = piece_b;
    traps_[cl].upper_right = traps_[cl].lower_right = piece_b;
  } else {
    const bool top_ends = last.top != kNone && edges_[last.top].q == s.q;
    const bool bottom_ends = last.bottom != kNone && edges_[last.bottom].q == s.q;
    if (top_ends && bottom_ends) {
      // Wedge on both sides: no right neighbours.
    } else if (top_ends) {
      traps_[cl].upper_right = last.upper_right;
      traps_[cl].lower_right = last.lower_right;
      replace_left(last.upper_right, crossed[k - 1], cl);
      replace_left(last.lower_right, crossed[k - 1], cl);
    } else if (bottom_ends) {
      traps_[cu].upper_right = last.upper_right;
      traps_[cu].lower_right = last.lower_right;
      replace_left(last.upper_right, crossed[k - 1], cu);
      replace_left(last.lower_right, crossed[k - 1], cu);
    } else {
      traps_[cu].upper_right = traps_[cu].lower_right = last.upper_right;
      replace_left(last.upper_right, crossed[k - 1], cu);
      traps_[cl].upper_right = traps_[cl].lower_right = last.lower_right;
      replace_left(last.lower_right, crossed[k - 1], cl);
    }
  }

  // History DAG: each crossed leaf becomes the root of its replacement.
  for (std::size_t j = 0; j < k; ++j) {
    Node root{NodeKind::YNode, {}, si, leaf_for(upper[j]), leaf_for(lower[j])};
    if (j == k - 1 && has_b) {
      nodes_.push_back(root);
      const auto y = static_cast<std::int32_t>(nodes_.size() - 1);
      root = Node{NodeKind::XNode, s.q, 0, y, leaf_for(piece_b)};
    }
    if (j == 0 && has_a) {
      nodes_.push_back(root);
      const auto inner = static_cast<std::int32_t>(nodes_.size() - 1);
      root = Node{NodeKind::XNode, s.p, 0, leaf_for(piece_a), inner};
    }
    nodes_[old[j].node] = root;
    traps_[crossed[j]].alive = false;
    traps_[crossed[j]].node = kNone;
  }
}

std::optional<std::pair<double, PolygonId>> PointLocationIndex::nearby_boundary(
    Point p, std::int32_t start) const {
  const double tol = tolerance_;
  // Vertical extent of a trapezoid at abscissa x, widened to stay conservative.
  auto spans = [&](const Trapezoid& t, double x) {
    auto y_on = [&](const Edge& e, bool want_max) {
      if (e.p.x == e.q.x) return want_max ? std::max(e.p.y, e.q.y) : std::min(e.p.y, e.q.y);
      const double u = std::clamp((x - e.p.x) / (e.q.x - e.p.x), 0.0, 1.0);
      return e.p.y + u * (e.q.y - e.p.y);
    };
    const double slack = 2.0 * tol + 1e-12 * (std::abs(p.y) + 1.0);
    const double top = t.top == kNone ? std::numeric_limits<double>::infinity()
                                      : y_on(edges_[t.top], true);
    const double bottom = t.bottom == kNone ? -std::numeric_limits<double>::infinity()
                                            : y_on(edges_[t.bottom], false);
    return p.y - slack <= top && p.y + slack >= bottom;
  };

  std::optional<std::pair<double, PolygonId>> best;
  std::vector<std::int32_t> pending{start};
  std::vector<std::int32_t> seen{start};
  auto push = [&](std::int32_t id, double wall_x) {
    if (id == kNone || std::find(seen.begin(), seen.end(), id) != seen.end()) return;
    if (!spans(traps_[id], wall_x)) return;
    seen.push_back(id);
    pending.push_back(id);
  };
  while (!pending.empty()) {
    const Trapezoid& t = traps_[pending.back()];
    pending.pop_back();
    for (std::int32_t e : {t.top, t.bottom}) {
      if (e == kNone) continue;
      const double d = point_segment_distance(p, edges_[e].p, edges_[e].q);
      const PolygonId id = edges_[e].polygon_id;
      if (d <= tol && (!best || d < best->first || (d == best->first && id < best->second))) {
        best = std::make_pair(d, id);
      }
    }
    if (t.has_left && p.x - t.leftp.x <= tol) {
      push(t.upper_left, t.leftp.x);
      push(t.lower_left, t.leftp.x);
    }
    if (t.has_right && t.rightp.x - p.x <= tol) {
      push(t.upper_right, t.rightp.x);
      push(t.lower_right, t.rightp.x);
    }
  }
  return best;
}

LocateResult PointLocationIndex::locate(Point p) const {
  if (edges_.empty()) return {};
  const std::int32_t t = find(p, nullptr);
  if (auto hit = nearby_boundary(p, t)) return {Location::OnBoundary, hit->second};
  const Trapezoid& trap = traps_[t];
  if (trap.bottom != kNone && edges_[trap.bottom].interior_above) {
    return {Location::Inside, edges_[trap.bottom].polygon_id};
  }
  return {};
}

std::size_t PointLocationIndex::trapezoid_count() const {
  return static_cast<std::size_t>(
      std::count_if(traps_.begin(), traps_.end(), [](const Trapezoid& t) { return t.alive; }));
}

std::size_t PointLocationIndex::depth() const {
  // Children are always created after their parent, so a reverse sweep sees
  // every child before its parent.
  std::vector<std::size_t> depth(nodes_.size(), 1);
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& n = nodes_[i];
    if (n.kind == NodeKind::Leaf) continue;
    depth[i] = 1 + std::max(depth[n.left], depth[n.right]);
  }
  return depth.empty() ? 0 : depth[0];
}

bool PointLocationIndex::self_check() const {
  for (std::size_t i = 0; i < traps_.size(); ++i) {
    const Trapezoid& t = traps_[i];
    if (!t.alive) continue;
    const auto id = static_cast<std::int32_t>(i);
    if (t.node == kNone || nodes_[t.node].kind != NodeKind::Leaf || nodes_[t.node].index != id) {
      return false;
    }
    if (t.has_left && t.has_right && !lex_less(t.leftp, t.rightp)) return false;
    for (std::int32_t r : {t.upper_right, t.lower_right}) {
      if (r == kNone) continue;
      const Trapezoid& n = traps_[r];
      if (!n.alive || !t.has_right || !n.has_left || !(n.leftp == t.rightp)) return false;
      if (n.upper_left != id && n.lower_left != id) return false;
    }
    for (std::int32_t l : {t.upper_left, t.lower_left}) {
      if (l == kNone) continue;
      const Trapezoid& n = traps_[l];
      if (!n.alive || !t.has_left || !n.has_right || !(n.rightp == t.leftp)) return false;
      if (n.upper_right != id && n.lower_right != id) return false;
    }
  }
  return true;
}

}  // namespace clearance
