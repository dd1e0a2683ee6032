#include "fence.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "peel_map.hpp"

namespace qm {

bool FenceTracker::feed(const PeelEvent& ev) {
  if (done_) return true;
  Accounting a = event_accounting(ev);
  if (a.swallowed_left <= N_) {
    N_ -= a.swallowed_left;
  } else {
    min_ -= a.swallowed_left - N_;
    N_ = 0;
  }
  N_ += a.exposed - 1;
  rho_ += a.swallowed_right;
  ++steps_;
  done_ = rho_ > k_;
  return done_;
}

FenceRecord FenceTracker::record() const {
  FenceRecord r;
  r.T = steps_ - 1;
  r.right = rho_ - k_;
  r.left = 1 - min_;
  r.length = N_ + 1;
  r.truncated = !done_;
  return r;
}

FenceRecord build_fence(std::int64_t k, Rng& rng, std::int64_t max_steps) {
  if (k < 1) throw std::invalid_argument("fence needs k >= 1");
  FenceTracker t(k);
  for (std::int64_t i = 0; i < max_steps; ++i)
    if (t.feed(sample_half_plane(rng))) break;
  return t.record();
}

FenceRecord build_fence_geometric(std::int64_t k, Rng& rng, std::int64_t max_steps) {
  if (k < 1) throw std::invalid_argument("fence needs k >= 1");
  PeelMap pm = PeelMap::half_planes(1, 2);
  std::unordered_map<int, std::int64_t> index;
  const Line& ln0 = pm.lines[0];
  for (std::int64_t i = ln0.lo; i <= ln0.hi; ++i) index[ln0.vertex(i)] = i;
  pm.on_boundary_vertex = [&](int v, int, std::int64_t i) { index[v] = i; };

  FenceRecord rec;
  std::int64_t rho = 1, lo = 0;
  int e = pm.m.root;
  bool done = false;
  for (std::int64_t step = 0; step < max_steps; ++step) {
    auto res = pm.peel(e, sample_half_plane(rng));
    rec.faces.push_back(res.face);
    rec.T = step;
    for (int c : res.corner) {
      auto it = index.find(c);
      if (it == index.end()) continue;
      rho = std::max(rho, it->second);
      lo = std::min(lo, it->second);
    }
    if (rho > k) {
      done = true;
      break;
    }
    while (pm.lines[0].hi <= rho) pm.extend_right(0);
    e = pm.m.fprev[pm.m.twin[pm.lines[0].ext(rho)]];
  }
  rec.right = rho - k;
  rec.left = 1 - lo;
  rec.truncated = !done;
  if (!done) return rec;
  while (pm.lines[0].hi <= rho) pm.extend_right(0);
  const Line& ln = pm.lines[0];
  int start = ln.vertex(1 - rec.left);
  int h = pm.m.fprev[pm.m.twin[ln.ext(rho)]];
  std::vector<int> path{ln.vertex(rho)};
  for (std::int64_t guard = 0; guard < 4 * (rec.T + 2) + 8; ++guard) {
    path.push_back(pm.m.origin[h]);
    if (pm.m.origin[h] == start) break;
    h = pm.m.fprev[h];
  }
  if (path.back() != start) throw std::logic_error("fence path does not close");
  std::reverse(path.begin(), path.end());
  rec.path = path;
  for (int v : path) {
    auto it = index.find(v);
    rec.path_index.push_back(it == index.end() ? INT64_MIN : it->second);
  }
  rec.length = static_cast<std::int64_t>(path.size()) - 1;
  return rec;
}

FenceRecord run_fence(const FenceFixture& fx) {
  const PlanarMap& m = fx.map;
  FenceRecord rec;
  std::int64_t rho = 1, lo = 0;
  int e = fx.line.at(0);
  for (std::int64_t step = 0;; ++step) {
    int f = m.face[e];
    if (m.faces[f].kind != FaceKind::Inner) throw std::runtime_error("fixture does not contain the needed face");
    rec.faces.push_back(f);
    rec.T = step;
    int h = e;
    do {
      int ix = fx.index[m.origin[h]];
      if (ix != kNotBoundary) rho = std::max<std::int64_t>(rho, ix), lo = std::min<std::int64_t>(lo, ix);
      h = m.fnext[h];
    } while (h != e);
    if (rho > fx.k) break;
    // rotate counterclockwise from v_rho -> v_{rho+1} to the first side of f
    int b = fx.line.at(rho), g = b;
    for (int guard = 0;; ++guard) {
      g = m.twin[m.fprev[g]];
      if (m.face[g] == f) break;
      if (g == b || guard > m.num_half_edges()) throw std::logic_error("face not incident to v_rho");
    }
    e = m.twin[g];
  }
  rec.right = rho - fx.k;
  rec.left = 1 - lo;
  auto edges = fence_edges(fx, rec);
  rec.length = static_cast<std::int64_t>(edges.size());
  return rec;
}

std::vector<int> fence_edges(const FenceFixture& fx, const FenceRecord& rec) {
  const PlanarMap& m = fx.map;
  int F = static_cast<int>(m.faces.size());
  std::vector<std::uint8_t> in(F, 0), outside(F, 0), line_edge(m.num_half_edges(), 0);
  for (int f : rec.faces) in[f] = 1;
  for (int f = 0; f < F; ++f)
    if (m.faces[f].infinite || m.faces[f].kind == FaceKind::External) outside[f] = 1;
  std::int64_t lo = 1 - rec.left, hi = fx.k + rec.right;
  for (auto [i, h] : fx.line) {
    line_edge[h] = line_edge[m.twin[h]] = 1;
    if (i < lo || i >= hi) outside[m.face[h]] = 1;
  }
  // complementary components across non-line edges; bounded ones join the hull
  std::vector<int> comp(F, -1);
  std::vector<std::uint8_t> hull = in;
  for (int f = 0; f < F; ++f) {
    if (in[f] || comp[f] >= 0 || m.faces[f].kind == FaceKind::External || m.faces[f].anchor < 0) continue;
    std::vector<int> members{f}, stack{f};
    comp[f] = f;
    bool unbounded = false;
    while (!stack.empty()) {
      int g = stack.back();
      stack.pop_back();
      unbounded |= outside[g] != 0;
      int a = m.faces[g].anchor, h = a;
      do {
        int x = m.face[m.twin[h]];
        if (!line_edge[h] && !in[x] && comp[x] < 0 && m.faces[x].kind != FaceKind::External)
          comp[x] = f, members.push_back(x), stack.push_back(x);
        h = m.fnext[h];
      } while (h != a);
    }
    if (!unbounded)
      for (int g : members) hull[g] = 1;
  }
  std::vector<int> out;
  for (int h = 0; h < m.num_half_edges(); ++h) {
    if (!m.alive(h) || h > m.twin[h] || line_edge[h]) continue;
    int a = m.face[h], b = m.face[m.twin[h]];
    if (hull[a] != hull[b]) out.push_back(h);
  }
  return out;
}

PlanarMap mirror_map(const PlanarMap& m) {
  PlanarMap r = m;
  int H = m.num_half_edges();
  for (int h = 0; h < H; ++h) {
    if (!m.alive(h)) continue;
    r.fnext[h] = m.twin[m.fprev[m.twin[h]]];
    r.face[h] = m.face[m.twin[h]];
  }
  for (int h = 0; h < H; ++h)
    if (m.alive(h)) r.fprev[r.fnext[h]] = h;
  for (auto& f : r.faces)
    if (f.anchor >= 0) f.anchor = m.twin[f.anchor];
  if (r.root >= 0) r.root = m.twin[r.root];
  return r;
}

FenceFixture mirrored(const FenceFixture& fx) {
  FenceFixture out;
  out.map = mirror_map(fx.map);
  out.k = fx.k;
  out.index = fx.index;
  for (auto& ix : out.index)
    if (ix != kNotBoundary) ix = static_cast<int>(fx.k + 1 - ix);
  for (auto [i, h] : fx.line) out.line[fx.k - i] = fx.map.twin[h];
  return out;
}

FlipResult flip_check(const FenceFixture& fx) {
  FlipResult r;
  r.original = run_fence(fx);
  FenceFixture mx = mirrored(fx);
  r.flipped = run_fence(mx);
  r.swapped = r.original.left == r.flipped.right && r.original.right == r.flipped.left;
  auto a = fence_edges(fx, r.original), b = fence_edges(mx, r.flipped);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.same_fence = a == b;
  return r;
}

namespace {

// Builds a map from face cycles of tagged half-edges "u>v" (twin "v>u", same tag).
struct FixtureBuilder {
  PlanarMap m;
  std::map<std::tuple<int, int, int>, int> he;

  int half(int u, int v, int tag) {
    auto key = std::make_tuple(u, v, tag);
    auto it = he.find(key);
    if (it != he.end()) return it->second;
    int h = m.add_edge(u, v);
    he[key] = h;
    he[std::make_tuple(v, u, tag)] = h + 1;
    return h;
  }
  int face(const std::vector<std::tuple<int, int, int>>& cyc, FaceKind kind, bool infinite = false) {
    int f = m.add_face(kind);
    m.faces[f].infinite = infinite;
    std::vector<int> hs;
    for (auto [u, v, t] : cyc) hs.push_back(half(u, v, t));
    for (size_t i = 0; i < hs.size(); ++i) {
      m.link(hs[i], hs[(i + 1) % hs.size()]);
      m.face[hs[i]] = f;
      m.vrep[m.origin[hs[i]]] = hs[i];
    }
    m.faces[f].anchor = hs[0];
    return f;
  }
};

}  // namespace

FenceFixture worked_fixture() {
  FixtureBuilder b;
  auto V = [](int i) { return i + 4; };  // boundary v_{-4}..v_6
  const int A = 11, B = 12, C = 13, D = 14, E = 15, G = 16, INF = 17;
  for (int i = 0; i < 17; ++i) b.m.add_vertex();
  b.m.add_vertex(true);
  using T = std::tuple<int, int, int>;
  auto L = [&](int i) { return T{V(i), V(i + 1), 0}; };
  b.face({L(0), T{V(1), V(0), 1}, T{V(0), G, 0}, T{G, V(0), 0}}, FaceKind::Inner);
  b.face({T{V(0), V(1), 1}, L(1), T{V(2), V(-1), 2}, L(-1)}, FaceKind::Inner);
  b.face({T{V(-1), V(2), 2}, T{V(2), D, 0}, T{D, V(-4), 0}, T{V(-4), V(-1), 3}}, FaceKind::Inner);
  b.face({T{D, V(2), 0}, T{V(2), A, 0}, T{A, E, 0}, T{E, D, 0}}, FaceKind::Inner);
  b.face({T{A, V(2), 0}, T{V(2), B, 0}, T{B, V(6), 0}, T{V(6), A, 0}}, FaceKind::Inner);
  b.face({L(2), L(3), T{V(4), B, 0}, T{B, V(2), 0}}, FaceKind::Inner);
  b.face({L(4), T{V(5), C, 0}, T{C, V(5), 0}, T{V(5), V(4), 4}}, FaceKind::Inner);
  b.face({T{B, V(4), 0}, T{V(4), V(5), 4}, L(5), T{V(6), B, 0}}, FaceKind::Inner);
  b.face({L(-4), L(-3), L(-2), T{V(-1), V(-4), 3}}, FaceKind::Inner);
  b.face({T{V(-4), D, 0}, T{D, E, 0}, T{E, A, 0}, T{A, V(6), 0}, T{V(6), INF, 0}, T{INF, V(-4), 0}}, FaceKind::Hole, true);
  std::vector<T> ext;
  for (int i = 6; i > -4; --i) ext.push_back(T{V(i), V(i - 1), 0});
  ext.push_back(T{V(-4), INF, 0});
  ext.push_back(T{INF, V(6), 0});
  b.face(ext, FaceKind::External);
  FenceFixture fx;
  fx.map = std::move(b.m);
  fx.k = 3;
  fx.index.assign(fx.map.num_vertex_slots(), kNotBoundary);
  for (int i = -4; i <= 6; ++i) fx.index[V(i)] = i;
  for (int i = -4; i < 6; ++i) fx.line[i] = b.he.at(L(i));
  fx.map.root = fx.line[0];
  return fx;
}

FenceFixture boltzmann_fixture(std::int64_t p, std::int64_t k, Rng& rng) {
  if (k < 1 || k > p - 1) throw std::invalid_argument("need 1 <= k <= p - 1");
  for (;;) {
    auto sample = sample_boltzmann(p, 4096, rng);
    if (!sample) continue;
    PlanarMap m = std::move(*sample);
    auto be = boundary_edges(m);
    std::int64_t P = 2 * p;
    std::vector<int> seen(m.num_vertex_slots(), 0);
    bool simple = true;
    for (int h : be) simple &= seen[m.origin[h]]++ == 0;
    if (!simple) continue;
    FenceFixture fx;
    fx.k = k;
    fx.index.assign(m.num_vertex_slots(), kNotBoundary);
    for (std::int64_t j = -(p - 1); j <= p; ++j) fx.index[m.origin[be[((j % P) + P) % P]]] = static_cast<int>(j);
    for (std::int64_t j = -(p - 1); j <= p - 1; ++j) fx.line[j] = be[((j % P) + P) % P];
    // the closing edge v_p -> v_{1-p} stands in for the boundary at infinity
    m.faces[m.face[be[p % P]]].infinite = true;
    fx.map = std::move(m);
    return fx;
  }
}

YWalkSummary y_walk(std::int64_t steps, Rng& rng, bool record) {
  YWalkSummary s;
  s.steps = steps;
  std::int64_t y = 0;
  if (record) s.values.push_back(0);
  for (std::int64_t i = 1; i <= steps; ++i) {
    auto a = event_accounting(sample_half_plane(rng));
    y += a.dY;
    double d = static_cast<double>(a.dY);
    s.sum_inc += d;
    s.sum_inc2 += d * d;
    if (y <= s.infimum) s.infimum = y, s.inf_step = i;
    if (record) s.values.push_back(y);
  }
  s.final_value = y;
  return s;
}

std::vector<TailRow> overshoot_tail(const std::vector<std::int64_t>& X, const std::vector<std::int64_t>& grid) {
  std::vector<std::int64_t> sorted = X;
  std::sort(sorted.begin(), sorted.end());
  std::vector<TailRow> out;
  for (auto n : grid) {
    auto cnt = std::upper_bound(sorted.begin(), sorted.end(), -n) - sorted.begin();
    TailRow r;
    r.n = n;
    r.p = sorted.empty() ? 0.0 : static_cast<double>(cnt) / static_cast<double>(sorted.size());
    r.scaled = std::sqrt(static_cast<double>(n)) * r.p;
    out.push_back(r);
  }
  return out;
}

std::vector<FenceLevel> iterate_fences(std::int64_t count, FenceVariant v, Rng& rng, std::int64_t max_steps) {
  std::vector<FenceLevel> out;
  std::int64_t kP = 1, kQ = 1, radius = 0;
  for (std::int64_t j = 0; j < count; ++j) {
    FenceLevel lev;
    lev.k = kP;
    FenceRecord P = build_fence(kP, rng, max_steps);
    if (v == FenceVariant::Folded) {
      lev.right = P.right;
      lev.left = P.left;
      lev.truncated = P.truncated;
      radius += std::max(P.right, P.left);
      kP = P.length + std::abs(P.right - P.left) + 1;
    } else {
      FenceRecord Q = build_fence(kQ, rng, max_steps);
      std::int64_t R = std::max(P.right, Q.right), Lft = std::max(P.left, Q.left);
      lev.right = R;
      lev.left = Lft;
      lev.truncated = P.truncated || Q.truncated;
      radius += std::max(R, Lft);
      kP = P.length + (R - P.right) + (Lft - P.left) + 1;
      kQ = Q.length + (R - Q.right) + (Lft - Q.left) + 1;
    }
    lev.radius = radius;
    out.push_back(lev);
    if (lev.truncated) break;
  }
  return out;
}

}  // namespace qm
