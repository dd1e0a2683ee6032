#include "peel_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace qm {

int PeelMap::new_hole(HoleLaw law, std::int64_t half) {
  int f = m.add_face(FaceKind::Hole);
  hole.resize(m.faces.size());
  hole[f] = HoleInfo{law, half};
  return f;
}

PeelMap PeelMap::half_planes(int count, std::int64_t L) {
  if (L < 1) throw std::invalid_argument("window must have L >= 1");
  PeelMap pm;
  for (int k = 0; k < count; ++k) {
    Line ln;
    ln.hole = pm.new_hole(HoleLaw::HalfPlane, 0);
    pm.m.faces[ln.hole].infinite = true;
    ln.outer = pm.m.add_face(FaceKind::External);
    pm.hole.resize(pm.m.faces.size());
    ln.lo = -L;
    ln.hi = L;
    ln.vneg.assign(L + 1, -1);
    ln.eneg.assign(L + 1, -1);
    for (std::int64_t i = -L; i <= L; ++i) {
      int v = pm.m.add_vertex();
      if (i >= 0) ln.vpos.push_back(v); else ln.vneg[-i] = v;
    }
    ln.inf = pm.m.add_vertex(true);
    std::vector<int> inner;  // x_i -> x_{i+1}, i = -L .. L-1
    for (std::int64_t i = -L; i < L; ++i) {
      int h = pm.m.add_edge(ln.vertex(i), ln.vertex(i + 1));
      inner.push_back(h);
      if (i >= 0) ln.epos.push_back(h + 1); else ln.eneg[-i] = h + 1;
    }
    ln.sR = pm.m.add_edge(ln.vertex(L), ln.inf);
    ln.sL = pm.m.add_edge(ln.inf, ln.vertex(-L));
    auto& m = pm.m;
    int n = static_cast<int>(inner.size());
    for (int j = 0; j + 1 < n; ++j) m.link(inner[j], inner[j + 1]);
    m.link(inner[n - 1], ln.sR);
    m.link(ln.sR, ln.sL);
    m.link(ln.sL, inner[0]);
    for (int j = n - 1; j >= 1; --j) m.link(inner[j] + 1, inner[j - 1] + 1);
    m.link(inner[0] + 1, ln.sL + 1);
    m.link(ln.sL + 1, ln.sR + 1);
    m.link(ln.sR + 1, inner[n - 1] + 1);
    for (int h : inner) m.face[h] = ln.hole, m.face[h + 1] = ln.outer;
    m.face[ln.sR] = m.face[ln.sL] = ln.hole;
    m.face[ln.sR + 1] = m.face[ln.sL + 1] = ln.outer;
    m.faces[ln.hole].anchor = inner[0];
    m.faces[ln.outer].anchor = inner[0] + 1;
    if (k == 0) m.root = inner[L];
    pm.lines.push_back(std::move(ln));
  }
  return pm;
}

PeelMap PeelMap::polygon(std::int64_t p, HoleLaw law) {
  if (p < 1) throw std::invalid_argument("polygon needs p >= 1");
  PeelMap pm;
  int H = pm.new_hole(law, p);
  int X = pm.m.add_face(FaceKind::External);
  pm.hole.resize(pm.m.faces.size());
  auto& m = pm.m;
  int P = static_cast<int>(2 * p);
  std::vector<int> vs, es;
  for (int i = 0; i < P; ++i) vs.push_back(m.add_vertex());
  for (int i = 0; i < P; ++i) es.push_back(m.add_edge(vs[i], vs[(i + 1) % P]));
  for (int i = 0; i < P; ++i) {
    m.link(es[i], es[(i + 1) % P]);
    m.link(es[(i + 1) % P] + 1, es[i] + 1);
    m.face[es[i]] = H;
    m.face[es[i] + 1] = X;
  }
  m.faces[H].anchor = es[0];
  m.faces[X].anchor = es[0] + 1;
  m.root = es[0];
  return pm;
}

int PeelMap::line_of(int v) const {
  for (size_t k = 0; k < lines.size(); ++k)
    if (lines[k].inf == v) return static_cast<int>(k);
  return -1;
}

void PeelMap::extend_right(int li) {
  Line& ln = lines[li];
  int x = ln.vertex(ln.hi);
  int w = m.add_vertex();
  int g = m.add_edge(x, w), gx = g + 1;
  int sr = ln.sR, srx = m.twin[sr];
  m.link(m.fprev[sr], g);
  m.link(g, sr);
  m.origin[sr] = w;
  int nx = m.fnext[srx];
  m.link(srx, gx);
  m.link(gx, nx);
  m.face[g] = ln.hole;
  m.face[gx] = ln.outer;
  if (m.vrep[x] == sr) m.vrep[x] = g;
  m.vrep[w] = gx;
  ++ln.hi;
  ln.vpos.push_back(w);
  ln.epos.push_back(gx);
  if (on_boundary_vertex) on_boundary_vertex(w, li, ln.hi);
}

void PeelMap::extend_left(int li) {
  Line& ln = lines[li];
  int x = ln.vertex(ln.lo);
  int w = m.add_vertex();
  int g = m.add_edge(w, x), gx = g + 1;
  int sl = ln.sL, slx = m.twin[sl];
  int nx = m.fnext[sl];
  m.link(sl, g);
  m.link(g, nx);
  m.origin[slx] = w;
  m.link(m.fprev[slx], gx);
  m.link(gx, slx);
  m.face[g] = ln.hole;
  m.face[gx] = ln.outer;
  if (m.vrep[x] == slx) m.vrep[x] = gx;
  m.vrep[w] = g;
  --ln.lo;
  ln.vneg.push_back(w);
  ln.eneg.push_back(gx);
  if (on_boundary_vertex) on_boundary_vertex(w, li, ln.lo);
}

int PeelMap::step_forward(int h) {
  int n = m.fnext[h];
  if (m.vvirtual[m.head(n)]) {
    extend_right(line_of(m.head(n)));
    n = m.fnext[h];
  }
  return n;
}

int PeelMap::step_backward(int h) {
  int p = m.fprev[h];
  if (m.vvirtual[m.origin[p]]) {
    extend_left(line_of(m.origin[p]));
    p = m.fprev[h];
  }
  return p;
}

int PeelMap::walk(int e, std::int64_t j) {
  const HoleInfo& info = hole[m.face[e]];
  if (info.law != HoleLaw::HalfPlane) {
    std::int64_t P = 2 * info.half;
    j = ((j % P) + P) % P;
    if (j > P - j) j -= P;
  }
  int h = e;
  for (; j > 0; --j) h = step_forward(h);
  for (; j < 0; ++j) h = step_backward(h);
  return h;
}

PeelResult PeelMap::peel(int e, const PeelEvent& ev) {
  if (!is_hole(e) || m.is_virtual(e)) throw std::logic_error("peel edge is not a real hole edge");
  if (ev.tag == PeelTag::Stop) throw std::logic_error("stop is handled by collapse");
  const int H = m.face[e];
  const HoleInfo info = hole[H];
  const bool infinite = info.law == HoleLaw::HalfPlane;
  const std::int64_t P = infinite ? 0 : 2 * info.half;

  // signed boundary positions of the corners x1, c, d, x0; `none` for fresh vertices
  constexpr std::int64_t none = INT64_MIN;
  std::int64_t pos[5] = {0, 1, none, none, 0};
  std::int64_t a = ev.l1, b = ev.l2;
  switch (ev.tag) {
    case PeelTag::C: break;
    case PeelTag::R: (a % 2 ? pos[2] : pos[3]) = 1 + a; break;
    case PeelTag::L: (a % 2 ? pos[3] : pos[2]) = -a; break;
    case PeelTag::RR: pos[2] = 1 + a; pos[3] = 1 + a + b; break;
    case PeelTag::LL: pos[2] = -a - b; pos[3] = -b; break;
    case PeelTag::CC: pos[3] = -a; pos[2] = 1 + b; break;
    case PeelTag::Stop: break;
  }
  std::vector<int> bc{1};
  for (int k : {2, 3})
    if (pos[k] != none) bc.push_back(k);
  bc.push_back(4);

  struct Region {
    int i, j;
    std::int64_t from, len;
    bool main;
    int first = -1, last = -1;
  };
  std::vector<Region> regs;
  std::int64_t total = 0;
  for (size_t r = 0; r + 1 < bc.size(); ++r) {
    int i = bc[r], j = bc[r + 1];
    std::int64_t u = pos[i], v = pos[j];
    Region g{i, j, u, 0, v < u};
    if (!infinite) {
      auto norm = [&](std::int64_t x) { return ((x - 1) % P + P) % P + 1; };
      std::int64_t nu = norm(u), nv = j == 4 ? P : norm(v);
      if (nv < nu) throw std::logic_error("event does not fit the hole");
      g.from = nu;
      g.len = nv - nu;
    } else if (!g.main) {
      g.len = v - u;
    }
    total += g.len;
    regs.push_back(g);
  }
  if (!infinite) {
    if (total != P - 1) throw std::logic_error("event does not fit the hole");
    if (info.law == HoleLaw::Boltzmann) {
      size_t best = 0;
      for (size_t r = 0; r < regs.size(); ++r) {
        regs[r].main = false;
        if (regs[r].len > regs[best].len) best = r;
      }
      regs[best].main = true;
    }
  }

  // locate arcs before any relinking; walks may grow the window
  std::vector<std::vector<int>> arcs(regs.size());
  for (size_t r = 0; r < regs.size(); ++r) {
    Region& g = regs[r];
    if (g.main) {
      std::int64_t to = infinite ? pos[g.j] : g.from + g.len;
      if (infinite || g.len > 0) {
        g.first = walk(e, g.from);
        g.last = walk(e, to - 1);
      }
    } else if (g.len > 0) {
      int h = walk(e, g.from);
      arcs[r].push_back(h);
      for (std::int64_t s = 1; s < g.len; ++s) {
        h = step_forward(h);
        arcs[r].push_back(h);
      }
      g.first = arcs[r].front();
      g.last = arcs[r].back();
    }
  }

  PeelResult res;
  res.corner[0] = m.origin[e];
  res.corner[1] = m.head(e);
  for (int k : {2, 3}) {
    if (pos[k] == none) {
      res.corner[k] = m.add_vertex();
      res.fresh[k] = true;
    } else {
      std::int64_t p = pos[k];
      if (!infinite) p = ((p % P) + P) % P;
      res.corner[k] = m.origin[walk(e, p)];
    }
  }
  int s1 = m.add_edge(res.corner[1], res.corner[2]);
  int s2 = m.add_edge(res.corner[2], res.corner[3]);
  int s3 = m.add_edge(res.corner[3], res.corner[0]);
  int s[4] = {-1, s1, s2, s3};
  int F = m.add_face(FaceKind::Inner);
  hole.resize(m.faces.size());
  m.link(e, s1);
  m.link(s1, s2);
  m.link(s2, s3);
  m.link(s3, e);
  for (int h : {e, s1, s2, s3}) m.face[h] = F;
  m.faces[F].anchor = e;
  res.face = F;
  res.side[0] = s1;
  res.side[1] = s2;
  res.side[2] = s3;

  for (size_t r = 0; r < regs.size(); ++r) {
    Region& g = regs[r];
    std::vector<int> chain;
    for (int k = g.j - 1; k >= g.i; --k) chain.push_back(s[k] + 1);
    int f;
    if (g.main) {
      f = H;
      if (!infinite) hole[H].half = (g.len + g.j - g.i) / 2;
      res.main_hole = H;
    } else {
      std::int64_t per = g.len + g.j - g.i;
      if (per % 2) throw std::logic_error("odd region perimeter");
      f = new_hole(HoleLaw::Boltzmann, per / 2);
      for (int h : arcs[r]) m.face[h] = f;
      res.new_holes.push_back(f);
    }
    for (int h : chain) m.face[h] = f;
    for (size_t c = 0; c + 1 < chain.size(); ++c) m.link(chain[c], chain[c + 1]);
    if (g.first >= 0) {
      m.link(g.last, chain.front());
      m.link(chain.back(), g.first);
    } else {
      m.link(chain.back(), chain.front());
    }
    m.faces[f].anchor = chain.back();
  }
  ++faces_revealed;
  return res;
}

void PeelMap::collapse(int e) {
  int H = m.face[e];
  int a = e, b = m.fnext[e];
  if (m.fnext[b] != a) throw std::logic_error("collapse needs a 2-gon");
  int ta = m.twin[a], tb = m.twin[b];
  m.twin[ta] = tb;
  m.twin[tb] = ta;
  int u = m.origin[a], v = m.origin[b];
  if (m.vrep[u] == a) m.vrep[u] = tb;
  if (m.vrep[v] == b) m.vrep[v] = ta;
  if (m.root == a) m.root = tb;
  if (m.root == b) m.root = ta;
  for (int h : {a, b}) m.twin[h] = -1, m.face[h] = -1;
  m.faces[H].kind = FaceKind::Dead;
  m.faces[H].anchor = -1;
  for (int f : {m.face[ta], m.face[tb]})
    if (m.faces[f].anchor == a || m.faces[f].anchor == b) m.faces[f].anchor = f == m.face[ta] ? ta : tb;
}

std::optional<PlanarMap> sample_boltzmann(std::int64_t p, std::int64_t budget, Rng& rng, std::int64_t* faces) {
  PeelMap pm = PeelMap::polygon(p, HoleLaw::Boltzmann);
  std::vector<int> open{pm.m.face[pm.m.root]};
  while (!open.empty()) {
    int f = open.back();
    std::int64_t half = pm.hole[f].half;
    PeelEvent ev = sample_boltzmann_event(half, rng);
    if (ev.tag == PeelTag::Stop) {
      pm.collapse(pm.m.faces[f].anchor);
      open.pop_back();
      continue;
    }
    if (pm.faces_revealed >= budget) {
      if (faces) *faces = pm.faces_revealed;
      return std::nullopt;
    }
    auto res = pm.peel(pm.m.faces[f].anchor, ev);
    open.pop_back();
    open.push_back(res.main_hole);
    for (int g : res.new_holes) open.push_back(g);
  }
  if (faces) *faces = pm.faces_revealed;
  return pm.m.compacted();
}

}  // namespace qm
