#include "agcr/contour.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "agcr/error.hpp"

namespace agcr {
namespace {

// Counterclockwise from East (y up).
constexpr Vertex kDirs[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

int dir_index(Vertex d) {
  for (int i = 0; i < 8; ++i)
    if (kDirs[i] == d) return i;
  throw Error(ErrorCode::kInternal, "contour step is not a unit move");
}

std::int64_t dist2(Vertex a, Vertex b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// First direction, scanning counterclockwise from `start`, whose pixel is
// filled while the previously scanned one is empty.
int scan_ccw(const PixelMask& m, Vertex p, int start) {
  for (int s = 0; s < 8; ++s) {
    const int k = (start + s) % 8;
    if (m.test(p + kDirs[k]) && !m.test(p + kDirs[(k + 7) % 8])) return k;
  }
  return -1;
}

// Moore-neighbour boundary chain with Jacob's stopping criterion.
std::vector<Vertex> moore_chain(const PixelMask& m, Vertex v0) {
  std::vector<Vertex> chain{v0};
  const int first_dir = scan_ccw(m, v0, 0);
  if (first_dir < 0) return chain;
  const Vertex first_next = v0 + kDirs[first_dir];
  const std::size_t bound = 8 * m.count() + 16;

  Vertex cur = v0;
  Vertex next = first_next;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > bound) throw Error(ErrorCode::kInternal, "boundary trace did not terminate");
    const Vertex prev = cur;
    cur = next;
    const int back = dir_index(prev - cur);
    const int k = scan_ccw(m, cur, (back + 1) % 8);
    if (k < 0) throw Error(ErrorCode::kInternal, "boundary trace lost the region");
    const Vertex after = cur + kDirs[k];
    if (cur == v0 && after == first_next) break;
    chain.push_back(cur);
    next = after;
  }
  return chain;
}

// Mutable ring with exact fill bookkeeping. A shortcut from vertex `from` to
// a later vertex `to` is accepted only when its raster stays inside `member`
// and the fill of the modified ring still equals `target` everywhere. Only
// the bounding box of the replaced path can change, so only that window is
// recomputed.
class RingEditor {
 public:
  RingEditor(std::vector<Vertex> ring, const PixelMask& member, const PixelMask& target)
      : pos_(std::move(ring)), member_(member), target_(target), box_(target.box()) {
    const std::size_t n = pos_.size();
    next_.resize(n);
    prev_.resize(n);
    alive_.assign(n, 1);
    version_.assign(n, 0);
    stamp_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      next_[i] = static_cast<int>((i + 1) % n);
      prev_[i] = static_cast<int>((i + n - 1) % n);
    }
    coverage_.assign(box_.area(), 0);
    rows_.resize(static_cast<std::size_t>(box_.height()));
    for (std::size_t i = 0; i < n; ++i) add_edge(static_cast<int>(i));
  }

  int next(int v) const { return next_[v]; }
  int prev(int v) const { return prev_[v]; }
  Vertex pos(int v) const { return pos_[v]; }

  bool valid(int from, int to) {
    if (from == to || next_[from] == to) return false;
    path_.clear();
    for (int v = from; v != to; v = next_[v]) {
      path_.push_back(v);
      if (path_.size() > pos_.size()) return false;
    }
    const Vertex a = pos_[from];
    const Vertex b = pos_[to];
    bool inside = true;
    for_each_segment_pixel(a, b, [&](Vertex p) { inside = inside && member_.test(p); });
    if (!inside) return false;

    BoundingBox w;
    for (int v : path_) w.expand(pos_[v]);
    w.expand(b);
    const std::int32_t ww = w.width();
    local_.assign(w.area(), 0);
    for (std::int32_t y = w.y0; y <= w.y1; ++y)
      for (std::int32_t x = w.x0; x <= w.x1; ++x)
        local_[static_cast<std::size_t>(y - w.y0) * ww + (x - w.x0)] = coverage_[cell({x, y})];
    auto bump = [&](Vertex p, int delta) {
      local_[static_cast<std::size_t>(p.y - w.y0) * ww + (p.x - w.x0)] += delta;
    };
    for (int v : path_)
      for_each_segment_pixel(pos_[v], pos_[next_[v]], [&](Vertex p) { bump(p, -1); });
    for_each_segment_pixel(a, b, [&](Vertex p) { bump(p, +1); });

    ++epoch_;
    for (int v : path_) stamp_[v] = epoch_;

    for (std::int32_t y = w.y0; y <= w.y1; ++y) {
      xs_.clear();
      for (const auto& [v, ver] : rows_[y - box_.y0]) {
        if (!alive_[v] || version_[v] != ver || stamp_[v] == epoch_) continue;
        append_crossing(pos_[v], pos_[next_[v]], y, xs_);
      }
      append_crossing(a, b, y, xs_);
      std::sort(xs_.begin(), xs_.end());
      std::size_t j = 0;
      for (std::int32_t x = w.x0; x <= w.x1; ++x) {
        while (j < xs_.size() && xs_[j] <= x) ++j;
        const bool in = local_[static_cast<std::size_t>(y - w.y0) * ww + (x - w.x0)] > 0 || (j & 1);
        if (in != target_.test(x, y)) return false;
      }
    }
    return true;
  }

  void commit(int from, int to) {
    for (int v = from; v != to;) {
      const int n = next_[v];
      for_each_segment_pixel(pos_[v], pos_[n], [&](Vertex p) { --coverage_[cell(p)]; });
      if (v != from) alive_[v] = 0;
      v = n;
    }
    next_[from] = to;
    prev_[to] = from;
    ++version_[from];
    add_edge(from);
  }

  std::vector<Vertex> ring(int start = 0) const {
    std::vector<Vertex> out;
    int v = start;
    do {
      out.push_back(pos_[v]);
      v = next_[v];
    } while (v != start);
    return out;
  }

 private:
  std::size_t cell(Vertex p) const {
    return static_cast<std::size_t>(p.y - box_.y0) * box_.width() + (p.x - box_.x0);
  }

  void add_edge(int v) {
    const Vertex a = pos_[v];
    const Vertex b = pos_[next_[v]];
    for_each_segment_pixel(a, b, [&](Vertex p) { ++coverage_[cell(p)]; });
    if (a.y == b.y) return;
    for (std::int32_t y = std::min(a.y, b.y); y < std::max(a.y, b.y); ++y)
      rows_[y - box_.y0].push_back({v, version_[v]});
  }

  std::vector<Vertex> pos_;
  const PixelMask& member_;
  const PixelMask& target_;
  BoundingBox box_;
  std::vector<int> next_, prev_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> version_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::int32_t> coverage_;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> rows_;
  std::vector<int> path_;
  std::vector<std::int32_t> local_;
  std::vector<std::int64_t> xs_;
};

// Vertex positions proposed by the ray casting of Algorithm 1 at chain
// vertex vi whose Moore successor is vf, best first.
std::vector<Vertex> ray_proposals(const PixelMask& m, Vertex vi, Vertex vf, Vertex v0) {
  const Vertex d = vf - vi;
  const Vertex ve = vi + kDirs[(dir_index(d) + 7) % 8];
  const bool diagonal = d.x != 0 && d.y != 0;
  const std::int32_t limit = m.box().width() + m.box().height() + 2;
  std::vector<Vertex> out;
  for (std::int32_t l = 1; l <= limit; ++l) {
    const Vertex pe = ve + d * l;
    const Vertex pf = vf + d * l;
    const Vertex filled_stop = vf + d * (l - 1);
    const bool hit = m.test(pe);
    const bool exited = !m.test(pf);
    if (hit && exited) {
      if (dist2(vi, pe) > dist2(vi, filled_stop)) {
        out = {pe, filled_stop};
      } else {
        out = {filled_stop, pe};
      }
    } else if (hit) {
      out = {pe, filled_stop};
    } else if (exited) {
      out = {filled_stop};
    } else if (diagonal) {
      const Vertex q = pe;
      const bool c1 = m.test(q - Vertex{0, d.y}) && m.test(q - Vertex{d.x, 0});
      const bool c2 = m.test(q + Vertex{d.x, 0}) && m.test(q - Vertex{d.x, 0}) && ve + d * (l + 1) == v0;
      if (!(c1 || c2)) continue;
      out = {filled_stop};
    } else {
      continue;
    }
    break;
  }
  return out;
}

// First vertex at position p walking forward from `from`, at most `limit`
// steps, never past the start vertex 0.
int find_forward(const RingEditor& ed, int from, Vertex p, int limit) {
  int v = from;
  for (int s = 0; s < limit; ++s) {
    v = ed.next(v);
    if (ed.pos(v) == p) return v;
    if (v == 0) break;
  }
  return -1;
}

// Traces one ring around the 4-connected set `member` starting at its
// bottommost-left pixel. `target` receives the fill the ring reproduces.
std::vector<Vertex> trace_ring(const PixelMask& member, Vertex v0, PixelMask& target) {
  std::vector<Vertex> chain = moore_chain(member, v0);
  target = fill_ring(chain, member.box());
  if (chain.size() < 2) return chain;

  RingEditor ed(chain, member, target);
  int cur = 0;
  for (;;) {
    const int nx = ed.next(cur);
    if (nx == 0) break;
    const Vertex vi = ed.pos(cur);
    const Vertex vf = ed.pos(nx);
    int chosen = nx;
    for (const Vertex& p : ray_proposals(member, vi, vf, v0)) {
      const auto reach = static_cast<int>(4 * std::max(std::abs(p.x - vi.x), std::abs(p.y - vi.y)) + 8);
      const int id = find_forward(ed, cur, p, reach);
      if (id < 0 || id == nx) continue;
      if (ed.valid(cur, id)) {
        ed.commit(cur, id);
        chosen = id;
        break;
      }
    }
    cur = chosen;
    if (cur == 0) break;
  }
  return ed.ring();
}

std::vector<Vertex> optimize_ring(const std::vector<Vertex>& ring, const PixelMask& member,
                                  const BoundingBox& box) {
  if (ring.size() < 3) return ring;
  const PixelMask target = fill_ring(ring, box);
  RingEditor ed(ring, member, target);
  for (bool changed = true; changed;) {
    changed = false;
    int v = 0;
    do {
      int best = -1;
      for (int cand = ed.next(ed.next(v)); cand != v; cand = ed.next(cand)) {
        if (ed.prev(cand) == 0) break;
        if (!ed.valid(v, cand)) break;
        best = cand;
      }
      if (best >= 0) {
        ed.commit(v, best);
        changed = true;
      }
      v = ed.next(v);
    } while (v != 0);
  }
  return ed.ring();
}

PixelMask mask_of(const std::vector<Vertex>& pixels) {
  PixelMask m(bounds_of(pixels));
  for (const Vertex& p : pixels) m.set(p);
  return m;
}

}  // namespace

PixelMask PixelRegion::mask() const {
  PixelMask m(bbox);
  for (const Vertex& p : pixels) m.set(p);
  return m;
}

std::size_t GeometricContour::vertex_count() const noexcept {
  std::size_t n = outer.size();
  for (const auto& h : holes) n += h.size();
  return n;
}

std::vector<std::uint32_t> label_regions(const ToleranceRaster& t, std::size_t* count) {
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  const std::uint32_t w = t.width;
  const std::uint32_t h = t.height;
  std::vector<std::uint32_t> labels(t.cells.size(), kUnset);
  std::vector<std::size_t> stack;
  std::uint32_t next = 0;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (labels[start] != kUnset) continue;
    const std::uint8_t tol = t.cells[start];
    labels[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::uint32_t x = static_cast<std::uint32_t>(i % w);
      const std::uint32_t y = static_cast<std::uint32_t>(i / w);
      auto visit = [&](std::size_t j) {
        if (labels[j] == kUnset && t.cells[j] == tol) {
          labels[j] = next;
          stack.push_back(j);
        }
      };
      if (x + 1 < w) visit(i + 1);
      if (x > 0) visit(i - 1);
      if (y + 1 < h) visit(i + w);
      if (y > 0) visit(i - w);
    }
    ++next;
  }
  if (count) *count = next;
  return labels;
}

std::vector<PixelRegion> extract_regions(const ToleranceRaster& t) {
  std::size_t n = 0;
  const std::vector<std::uint32_t> labels = label_regions(t, &n);
  std::vector<PixelRegion> regions(n);
  for (std::uint32_t y = 0; y < t.height; ++y) {
    for (std::uint32_t x = 0; x < t.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * t.width + x;
      PixelRegion& r = regions[labels[i]];
      const Vertex v{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
      if (r.pixels.empty()) r.tolerance = t.cells[i];
      r.pixels.push_back(v);
      r.bbox.expand(v);
    }
  }
  return regions;
}

GeometricContour trace_contour(const PixelRegion& r) {
  if (r.pixels.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot contour an empty region");
  const PixelMask member = r.mask();
  const Vertex v0 = *std::min_element(r.pixels.begin(), r.pixels.end(), [](Vertex a, Vertex b) {
    return std::pair(a.y, a.x) < std::pair(b.y, b.x);
  });

  GeometricContour c;
  PixelMask target;
  c.outer = trace_ring(member, v0, target);

  // Holes: 4-connected non-member components inside the outer fill.
  const BoundingBox& box = member.box();
  PixelMask seen(box);
  std::vector<Vertex> stack;
  std::vector<Vertex> comp;
  for (std::int32_t y = box.y0; y <= box.y1; ++y) {
    for (std::int32_t x = box.x0; x <= box.x1; ++x) {
      const Vertex s{x, y};
      if (!target.test(s) || member.test(s) || seen.test(s)) continue;
      comp.clear();
      seen.set(s);
      stack.push_back(s);
      while (!stack.empty()) {
        const Vertex p = stack.back();
        stack.pop_back();
        comp.push_back(p);
        for (int k = 0; k < 8; k += 2) {
          const Vertex q = p + kDirs[k];
          if (target.test(q) && !member.test(q) && !seen.test(q)) {
            seen.set(q);
            stack.push_back(q);
          }
        }
      }
      std::sort(comp.begin(), comp.end(),
                [](Vertex a, Vertex b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); });
      const PixelMask hole = mask_of(comp);
      PixelMask hole_target;
      c.holes.push_back(trace_ring(hole, comp.front(), hole_target));
    }
  }
  return c;
}

GeometricContour optimize_contour(const GeometricContour& c, const PixelRegion& r) {
  GeometricContour out;
  const PixelMask member = r.mask();
  out.outer = optimize_ring(c.outer, member, member.box());
  for (const auto& hole : c.holes) {
    const PixelMask hole_member = fill_ring(hole);
    out.holes.push_back(optimize_ring(hole, hole_member, hole_member.box()));
  }
  return out;
}

GeometricContour contour_region(const PixelRegion& r) {
  return optimize_contour(trace_contour(r), r);
}

PixelMask rasterize_edges(const GeometricContour& c) {
  BoundingBox box = bounds_of(c.outer);
  for (const auto& h : c.holes) box.expand(bounds_of(h));
  PixelMask m(box);
  auto draw = [&](const std::vector<Vertex>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i)
      for_each_segment_pixel(ring[i], ring[(i + 1) % ring.size()], [&](Vertex p) { m.set(p); });
  };
  draw(c.outer);
  for (const auto& h : c.holes) draw(h);
  return m;
}

PixelMask fill_region(const GeometricContour& c) {
  const BoundingBox box = bounds_of(c.outer);
  PixelMask m = fill_ring(c.outer, box);
  for (const auto& h : c.holes) {
    const PixelMask hf = fill_ring(h, box);
    auto dst = m.raw();
    auto src = hf.raw();
    for (std::size_t i = 0; i < dst.size(); ++i)
      if (src[i]) dst[i] = 0;
  }
  return m;
}

std::size_t axis_aligned_vertex_count(const PixelRegion& r) {
  const PixelMask m = r.mask();
  const BoundingBox& b = r.bbox;
  std::size_t n = 0;
  // Lattice corner (x, y) sits between pixels x-1..x and y-1..y.
  for (std::int32_t y = b.y0; y <= b.y1 + 1; ++y) {
    for (std::int32_t x = b.x0; x <= b.x1 + 1; ++x) {
      const bool bl = m.test(x - 1, y - 1);
      const bool br = m.test(x, y - 1);
      const bool tl = m.test(x - 1, y);
      const bool tr = m.test(x, y);
      const int c = bl + br + tl + tr;
      if (c == 1 || c == 3) {
        n += 1;
      } else if (c == 2 && bl == tr) {
        n += 2;
      }
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Lossy reduction

namespace {

double triangle_area(Vertex a, Vertex b, Vertex c) {
  const double cross = static_cast<double>(b.x - a.x) * (c.y - a.y) -
                       static_cast<double>(c.x - a.x) * (b.y - a.y);
  return std::abs(cross) * 0.5;
}

double ring_area(const std::vector<Vertex>& ring) {
  double s = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vertex a = ring[i];
    const Vertex b = ring[(i + 1) % ring.size()];
    s += static_cast<double>(a.x) * b.y - static_cast<double>(b.x) * a.y;
  }
  return std::abs(s) * 0.5;
}

int orient(Vertex a, Vertex b, Vertex c) {
  const std::int64_t v = static_cast<std::int64_t>(b.x - a.x) * (c.y - a.y) -
                         static_cast<std::int64_t>(b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

bool on_segment(Vertex a, Vertex b, Vertex p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vertex a, Vertex b, Vertex c, Vertex d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

struct VwRing {
  std::vector<Vertex> pos;
  std::vector<int> next, prev;
  std::vector<std::uint8_t> alive;
  std::size_t size = 0;
};

// New edge prev(v)->next(v) crosses no other edge of the ring.
bool removal_keeps_simple(const VwRing& r, int v) {
  const int a = r.prev[v];
  const int b = r.next[v];
  const Vertex pa = r.pos[a];
  const Vertex pb = r.pos[b];
  int u = b;
  do {
    const int w = r.next[u];
    if (u != b && w != a && u != a) {
      if (segments_intersect(pa, pb, r.pos[u], r.pos[w])) return false;
    }
    u = w;
  } while (u != a);
  return true;
}

}  // namespace

GeometricContour reduce_contour(const GeometricContour& c, std::size_t region_pixels,
                                std::uint32_t max_per_100px) {
  const std::size_t budget =
      std::max<std::size_t>(3, (region_pixels + 99) / 100 * static_cast<std::size_t>(max_per_100px));
  if (c.vertex_count() <= budget) return c;

  GeometricContour out;
  out.outer = c.outer;
  // Keep the largest holes that still leave room for 3 vertices per ring.
  std::vector<std::size_t> order(c.holes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ring_area(c.holes[a]) > ring_area(c.holes[b]);
  });
  std::size_t floor_cost = std::min<std::size_t>(3, c.outer.size());
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const std::size_t cost = std::min<std::size_t>(3, c.holes[i].size());
    if (floor_cost + cost > budget) continue;
    floor_cost += cost;
    kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  for (std::size_t i : kept) out.holes.push_back(c.holes[i]);

  std::vector<VwRing> rings;
  auto load = [&](const std::vector<Vertex>& ring) {
    VwRing r;
    r.pos = ring;
    const int n = static_cast<int>(ring.size());
    r.next.resize(n);
    r.prev.resize(n);
    r.alive.assign(n, 1);
    r.size = ring.size();
    for (int i = 0; i < n; ++i) {
      r.next[i] = (i + 1) % n;
      r.prev[i] = (i + n - 1) % n;
    }
    rings.push_back(std::move(r));
  };
  load(out.outer);
  for (const auto& h : out.holes) load(h);

  std::size_t total = 0;
  for (const auto& r : rings) total += r.size;

  struct Item {
    double area;
    int ring;
    int v;
    Vertex a, b;  // neighbours when the area was computed
    bool operator>(const Item& o) const {
      if (area != o.area) return area > o.area;
      if (ring != o.ring) return ring > o.ring;
      return v > o.v;
    }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  auto push = [&](int ri, int v) {
    const VwRing& r = rings[ri];
    if (r.size <= 3) return;
    const Vertex a = r.pos[r.prev[v]];
    const Vertex b = r.pos[r.next[v]];
    heap.push({triangle_area(a, r.pos[v], b), ri, v, a, b});
  };
  for (int ri = 0; ri < static_cast<int>(rings.size()); ++ri)
    for (int v = 0; v < static_cast<int>(rings[ri].pos.size()); ++v) push(ri, v);

  while (total > budget && !heap.empty()) {
    const Item it = heap.top();
    heap.pop();
    VwRing& r = rings[it.ring];
    if (!r.alive[it.v] || r.size <= 3) continue;
    if (r.pos[r.prev[it.v]] != it.a || r.pos[r.next[it.v]] != it.b) continue;  // stale
    if (!removal_keeps_simple(r, it.v)) continue;
    const int p = r.prev[it.v];
    const int n = r.next[it.v];
    r.alive[it.v] = 0;
    r.next[p] = n;
    r.prev[n] = p;
    --r.size;
    --total;
    push(it.ring, p);
    push(it.ring, n);
  }

  auto collect = [](const VwRing& r) {
    std::vector<Vertex> ring;
    int start = 0;
    while (!r.alive[start]) ++start;
    int v = start;
    do {
      ring.push_back(r.pos[v]);
      v = r.next[v];
    } while (v != start);
    return ring;
  };
  out.outer = collect(rings[0]);
  for (std::size_t i = 0; i < out.holes.size(); ++i) out.holes[i] = collect(rings[i + 1]);
  return out;
}

}  // namespace agcr
