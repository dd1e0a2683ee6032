#include "planar_map.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace qm {

int PlanarMap::add_vertex(bool is_virtual) {
  vrep.push_back(-1);
  vvirtual.push_back(is_virtual ? 1 : 0);
  return static_cast<int>(vrep.size()) - 1;
}

int PlanarMap::add_face(FaceKind kind) {
  faces.push_back(FaceRec{kind, -1, false});
  return static_cast<int>(faces.size()) - 1;
}

int PlanarMap::add_edge(int u, int v) {
  int h = num_half_edges();
  for (int k = 0; k < 2; ++k) {
    twin.push_back(h + 1 - k);
    fnext.push_back(-1);
    fprev.push_back(-1);
    face.push_back(-1);
  }
  origin.push_back(u);
  origin.push_back(v);
  if (vrep[u] < 0) vrep[u] = h;
  if (vrep[v] < 0) vrep[v] = h + 1;
  return h;
}

int PlanarMap::live_half_edges() const {
  return static_cast<int>(std::count_if(twin.begin(), twin.end(), [](int t) { return t >= 0; }));
}

int PlanarMap::live_vertices() const {
  int n = 0;
  for (int v = 0; v < num_vertex_slots(); ++v)
    if (vrep[v] >= 0) ++n;
  return n;
}

int PlanarMap::live_faces() const {
  int n = 0;
  for (const auto& f : faces)
    if (f.kind != FaceKind::Dead) ++n;
  return n;
}

int PlanarMap::count_faces(FaceKind k) const {
  int n = 0;
  for (const auto& f : faces)
    if (f.kind == k) ++n;
  return n;
}

int PlanarMap::face_degree(int f) const {
  int a = faces[f].anchor;
  if (a < 0) return 0;
  int d = 0, h = a;
  do {
    ++d;
    h = fnext[h];
  } while (h != a && d <= num_half_edges());
  return d;
}

std::vector<int> PlanarMap::rebuild_vertices() {
  int H = num_half_edges();
  std::vector<int> old_to_new(vrep.size(), -1);
  std::vector<int> nv(H, -1);
  std::vector<int> new_rep;
  std::vector<std::uint8_t> new_virtual;
  for (int h = 0; h < H; ++h) {
    if (!alive(h) || nv[h] >= 0) continue;
    int id = static_cast<int>(new_rep.size());
    new_rep.push_back(h);
    std::uint8_t virt = 0;
    int x = h;
    do {
      nv[x] = id;
      if (old_to_new[origin[x]] < 0) old_to_new[origin[x]] = id;
      virt |= vvirtual[origin[x]];
      x = sigma(x);
    } while (x != h);
    new_virtual.push_back(virt);
  }
  for (int h = 0; h < H; ++h)
    if (alive(h)) origin[h] = nv[h];
  vrep = std::move(new_rep);
  vvirtual = std::move(new_virtual);
  return old_to_new;
}

void PlanarMap::rebuild_faces() {
  int H = num_half_edges();
  std::vector<int> nf(H, -1);
  std::vector<FaceRec> nfaces;
  for (int h = 0; h < H; ++h) {
    if (!alive(h) || nf[h] >= 0) continue;
    FaceRec rec = faces[face[h]];
    rec.anchor = h;
    int id = static_cast<int>(nfaces.size());
    nfaces.push_back(rec);
    int x = h;
    do {
      nf[x] = id;
      x = fnext[x];
    } while (x != h);
  }
  for (int h = 0; h < H; ++h)
    if (alive(h)) face[h] = nf[h];
  faces = std::move(nfaces);
}

PlanarMap PlanarMap::compacted(std::vector<int>* label_out) const {
  int H = num_half_edges();
  std::vector<int> label(H, -1), order;
  std::deque<int> q;
  auto visit = [&](int h) {
    if (h >= 0 && label[h] < 0) {
      label[h] = static_cast<int>(order.size());
      order.push_back(h);
      q.push_back(h);
    }
  };
  visit(root);
  while (!q.empty()) {
    int h = q.front();
    q.pop_front();
    visit(fnext[h]);
    visit(twin[h]);
  }
  PlanarMap out;
  int n = static_cast<int>(order.size());
  out.twin.resize(n);
  out.fnext.resize(n);
  out.fprev.resize(n);
  out.origin.resize(n);
  out.face.resize(n);
  std::vector<int> vmap(vrep.size(), -1), fmap(faces.size(), -1);
  for (int i = 0; i < n; ++i) {
    int h = order[i];
    out.twin[i] = label[twin[h]];
    out.fnext[i] = label[fnext[h]];
    out.fprev[i] = label[fprev[h]];
    int v = origin[h];
    if (vmap[v] < 0) {
      vmap[v] = out.add_vertex(vvirtual[v]);
      out.vrep[vmap[v]] = i;
    }
    out.origin[i] = vmap[v];
    int f = face[h];
    if (fmap[f] < 0) {
      fmap[f] = static_cast<int>(out.faces.size());
      FaceRec rec = faces[f];
      rec.anchor = i;
      out.faces.push_back(rec);
    }
    out.face[i] = fmap[f];
  }
  out.root = n > 0 ? 0 : -1;
  if (label_out) *label_out = std::move(label);
  return out;
}

int external_face(const PlanarMap& m) { return m.face[m.twin[m.root]]; }

std::vector<int> boundary_edges(const PlanarMap& m) {
  std::vector<int> out;
  int e = m.root;
  int limit = m.num_half_edges();
  do {
    out.push_back(e);
    e = m.twin[m.fprev[m.twin[e]]];
  } while (e != m.root && static_cast<int>(out.size()) <= limit);
  return out;
}

std::vector<std::string> validate_saw(const PlanarMap& m, const Saw& w) {
  std::vector<std::string> errs;
  if (w.b < 0 || w.f < 1 || static_cast<int>(w.edges.size()) != w.b + w.f) {
    errs.push_back("saw: bad lengths");
    return errs;
  }
  for (int h : w.edges)
    if (h < 0 || h >= m.num_half_edges() || !m.alive(h)) {
      errs.push_back("saw: edge out of range or dead");
      return errs;
    }
  if (w.at(0) != m.root) errs.push_back("saw: e_0 is not the root");
  std::vector<int> verts;
  for (int i = -w.b; i < w.f; ++i) {
    if (i + 1 < w.f && m.head(w.at(i)) != m.origin[w.at(i + 1)]) errs.push_back("saw: edges do not chain");
    verts.push_back(m.origin[w.at(i)]);
  }
  verts.push_back(m.head(w.at(w.f - 1)));
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) errs.push_back("saw: repeated vertex");
  return errs;
}

ValidationReport validate_quadrangulation(const PlanarMap& m, bool has_boundary, bool simple_boundary) {
  ValidationReport rep;
  auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
  int H = m.num_half_edges();
  if (m.root < 0 || m.root >= H || !m.alive(m.root)) {
    bad("root missing or dead");
    return rep;
  }
  for (int h = 0; h < H; ++h) {
    if (!m.alive(h)) continue;
    int t = m.twin[h];
    if (t >= H || !m.alive(t) || m.twin[t] != h || t == h) {
      bad("dangling twin at " + std::to_string(h));
      return rep;
    }
    int n = m.fnext[h];
    if (n < 0 || n >= H || !m.alive(n) || m.fprev[n] != h) {
      bad("broken face cycle at " + std::to_string(h));
      return rep;
    }
    if (m.origin[n] != m.head(h)) bad("origin mismatch at " + std::to_string(h));
    if (m.face[n] != m.face[h]) bad("face id mismatch at " + std::to_string(h));
  }
  if (!rep.ok()) return rep;

  std::vector<char> seen(H, 0);
  std::vector<int> stack{m.root};
  seen[m.root] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int h = stack.back();
    stack.pop_back();
    ++reached;
    for (int g : {m.twin[h], m.fnext[h]})
      if (!seen[g]) {
        seen[g] = 1;
        stack.push_back(g);
      }
  }
  int live = m.live_half_edges();
  if (reached != live) bad("map is disconnected");

  std::vector<char> vseen(m.num_vertex_slots(), 0), fseen(m.faces.size(), 0);
  int V = 0, F = 0;
  for (int h = 0; h < H; ++h) {
    if (!m.alive(h)) continue;
    if (!vseen[m.origin[h]]) vseen[m.origin[h]] = 1, ++V;
    if (!fseen[m.face[h]]) fseen[m.face[h]] = 1, ++F;
  }
  int E = live / 2;
  if (V - E + F != 2) bad("Euler relation fails: V-E+F=" + std::to_string(V - E + F));

  std::vector<int> degree(m.faces.size(), 0);
  for (int h = 0; h < H; ++h)
    if (m.alive(h)) ++degree[m.face[h]];
  int ext = has_boundary ? external_face(m) : -1;
  for (size_t f = 0; f < m.faces.size(); ++f) {
    if (!fseen[f]) continue;
    if (static_cast<int>(f) == ext) continue;
    FaceKind k = m.faces[f].kind;
    if (k == FaceKind::Inner) {
      if (degree[f] != 4 && !(E == 1 && degree[f] == 2))
        bad("inner face " + std::to_string(f) + " has degree " + std::to_string(degree[f]));
    } else if (k == FaceKind::Hole || k == FaceKind::External) {
      if (degree[f] % 2) bad("odd hole degree at face " + std::to_string(f));
    }
  }
  if (has_boundary) {
    if (m.faces[ext].kind != FaceKind::External) bad("face right of the root is not external");
    if (degree[ext] % 2) bad("external face has odd degree");
    if (simple_boundary) {
      auto be = boundary_edges(m);
      std::vector<int> xs;
      for (int h : be) xs.push_back(m.origin[h]);
      std::sort(xs.begin(), xs.end());
      if (static_cast<int>(be.size()) != degree[ext] || std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        bad("boundary is not simple");
    }
  }
  return rep;
}

std::vector<int> bfs_distances(const PlanarMap& m, const std::vector<int>& sources) {
  int V = m.num_vertex_slots();
  std::vector<std::vector<int>> adj(V);
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (m.alive(h) && !m.is_virtual(h)) adj[m.origin[h]].push_back(m.head(h));
  std::vector<int> dist(V, -1);
  std::deque<int> q;
  for (int s : sources)
    if (dist[s] < 0) dist[s] = 0, q.push_back(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (dist[w] < 0) dist[w] = dist[v] + 1, q.push_back(w);
  }
  return dist;
}

std::vector<std::uint8_t> ball_faces(const PlanarMap& m, int r) {
  auto dist = bfs_distances(m, {m.origin[m.root]});
  std::vector<std::uint8_t> sel(m.faces.size(), 0);
  for (int h = 0; h < m.num_half_edges(); ++h) {
    if (!m.alive(h) || m.kind_of(h) != FaceKind::Inner) continue;
    int d = dist[m.origin[h]];
    if (d >= 0 && d <= r) sel[m.face[h]] = 1;
  }
  return sel;
}

PlanarMap ball(const PlanarMap& m, int r) {
  auto sel = ball_faces(m, r);
  int H = m.num_half_edges();
  PlanarMap out = m;
  int outer = out.add_face(FaceKind::External);
  for (int h = 0; h < H; ++h) {
    if (!m.alive(h)) continue;
    bool mine = sel[m.face[h]], theirs = sel[m.face[m.twin[h]]];
    bool root_edge = h == m.root || m.twin[h] == m.root;
    if (!mine && !theirs && !root_edge) {
      out.twin[h] = -1;
      out.face[h] = -1;
    }
  }
  auto kept = [&](int h) { return out.alive(h); };
  auto selected = [&](int h) { return sel[m.face[h]] != 0; };
  for (int h = 0; h < H; ++h) {
    if (!kept(h) || selected(h)) continue;
    // rotate around head(h) to the next kept half-edge; all skipped wedges lie outside
    int y = m.fnext[h];
    while (!kept(y)) y = m.sigma(y);
    out.link(h, y);
    out.face[h] = outer;
  }
  out.rebuild_faces();
  out.rebuild_vertices();
  return out.compacted();
}

std::vector<std::uint8_t> hull(const PlanarMap& m, const std::vector<std::uint8_t>& region) {
  int F = static_cast<int>(m.faces.size());
  std::vector<std::vector<int>> adj(F);
  for (int h = 0; h < m.num_half_edges(); ++h) {
    if (!m.alive(h)) continue;
    int a = m.face[h], b = m.face[m.twin[h]];
    if (!region[a] && !region[b] && a != b) adj[a].push_back(b);
  }
  std::vector<int> comp(F, -1);
  std::vector<std::uint8_t> out = region;
  for (int f = 0; f < F; ++f) {
    if (region[f] || comp[f] >= 0 || m.faces[f].kind == FaceKind::Dead || m.faces[f].anchor < 0) continue;
    std::vector<int> members{f}, stack{f};
    comp[f] = f;
    bool infinite = false;
    while (!stack.empty()) {
      int g = stack.back();
      stack.pop_back();
      if (m.faces[g].infinite || m.faces[g].kind == FaceKind::External) infinite = true;
      for (int x : adj[g])
        if (comp[x] < 0) comp[x] = f, members.push_back(x), stack.push_back(x);
    }
    if (!infinite)
      for (int g : members) out[g] = 1;
  }
  return out;
}

PlanarMap reroot_boundary(const PlanarMap& bm, long k) {
  auto be = boundary_edges(bm);
  long P = static_cast<long>(be.size());
  PlanarMap out = bm;
  out.root = be[((k % P) + P) % P];
  return out;
}

std::string serialize(const PlanarMap& m0) {
  PlanarMap m = m0.compacted();
  std::ostringstream os;
  int H = m.num_half_edges();
  os << "qmap 1\n";
  os << "counts " << H << ' ' << m.num_vertex_slots() << ' ' << m.faces.size() << '\n';
  os << "root " << m.root << '\n';
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const auto& rec = m.faces[f];
    if (rec.kind == FaceKind::Inner && !rec.infinite) continue;
    os << "face " << f << ' ' << (rec.kind == FaceKind::External ? "external" : rec.kind == FaceKind::Hole ? "hole" : "inner");
    if (rec.infinite) os << " infinite";
    os << '\n';
  }
  for (int v = 0; v < m.num_vertex_slots(); ++v)
    if (m.vvirtual[v]) os << "virtual " << v << '\n';
  for (int h = 0; h < H; ++h) os << h << ' ' << m.twin[h] << ' ' << m.sigma(h) << ' ' << m.origin[h] << '\n';
  return os.str();
}

PlanarMap parse_map(const std::string& text) {
  std::istringstream is(text);
  std::string line, word;
  PlanarMap m;
  int H = -1, V = -1, F = -1;
  std::vector<std::pair<int, FaceRec>> marks;
  std::vector<int> virt, sig;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      if (H < 0) throw std::invalid_argument("map text: half-edge rows before counts");
      int id, t, nx, o;
      if (!(ls >> id >> t >> nx >> o) || id != rows || id >= H || t < 0 || t >= H || nx < 0 || nx >= H || o < 0 || o >= V)
        throw std::invalid_argument("map text: bad half-edge row: " + line);
      m.twin[id] = t;
      sig[id] = nx;
      m.origin[id] = o;
      ++rows;
      continue;
    }
    ls >> word;
    if (word == "qmap") continue;
    if (word == "counts") {
      if (!(ls >> H >> V >> F) || H < 0 || V < 0 || F < 0) throw std::invalid_argument("map text: bad counts");
      m.twin.assign(H, -1);
      m.fnext.assign(H, -1);
      m.fprev.assign(H, -1);
      m.origin.assign(H, -1);
      m.face.assign(H, -1);
      sig.assign(H, -1);
    } else if (word == "root") {
      ls >> m.root;
    } else if (word == "face") {
      int f;
      std::string kind, inf;
      ls >> f >> kind >> inf;
      FaceRec rec;
      rec.kind = kind == "external" ? FaceKind::External : kind == "hole" ? FaceKind::Hole : FaceKind::Inner;
      rec.infinite = inf == "infinite";
      marks.push_back({f, rec});
    } else if (word == "virtual") {
      int v;
      ls >> v;
      virt.push_back(v);
    } else {
      throw std::invalid_argument("map text: unknown line: " + line);
    }
  }
  if (H < 0 || rows != H) throw std::invalid_argument("map text: wrong number of half-edge rows");
  if (m.root < 0 || m.root >= H) throw std::invalid_argument("map text: bad root");
  for (int h = 0; h < H; ++h)
    if (m.twin[h] == h || m.twin[m.twin[h]] != h) throw std::invalid_argument("map text: twin is not an involution");
  for (int h = 0; h < H; ++h) m.fnext[h] = sig[m.twin[h]];
  for (int h = 0; h < H; ++h) {
    if (m.fprev[m.fnext[h]] >= 0) throw std::invalid_argument("map text: next is not a permutation");
    m.fprev[m.fnext[h]] = h;
  }
  m.vrep.assign(V, -1);
  m.vvirtual.assign(V, 0);
  for (int h = 0; h < H; ++h)
    if (m.vrep[m.origin[h]] < 0) m.vrep[m.origin[h]] = h;
  for (int v : virt)
    if (v >= 0 && v < V) m.vvirtual[v] = 1;
  int nf = 0;
  for (int h = 0; h < H; ++h) {
    if (m.face[h] >= 0) continue;
    int x = h;
    do {
      m.face[x] = nf;
      x = m.fnext[x];
    } while (x != h);
    ++nf;
  }
  if (nf != F) throw std::invalid_argument("map text: face count mismatch");
  m.faces.assign(F, FaceRec{});
  for (int h = H - 1; h >= 0; --h) m.faces[m.face[h]].anchor = h;
  for (auto& [f, rec] : marks) {
    if (f < 0 || f >= F) throw std::invalid_argument("map text: bad face mark");
    rec.anchor = m.faces[f].anchor;
    m.faces[f] = rec;
  }
  return m;
}

std::string serialize_saw(const Saw& w) {
  std::ostringstream os;
  os << "saw " << w.b << ' ' << w.f;
  for (int h : w.edges) os << ' ' << h;
  return os.str();
}

Saw parse_saw(const std::string& line) {
  std::istringstream is(line);
  std::string word;
  Saw w;
  if (!(is >> word) || word != "saw" || !(is >> w.b >> w.f) || w.b < 0 || w.f < 1)
    throw std::invalid_argument("saw line must read `saw b f e_-b ... e_f-1`");
  w.edges.resize(w.b + w.f);
  for (auto& h : w.edges)
    if (!(is >> h)) throw std::invalid_argument("saw line: too few edges");
  return w;
}

std::string canonical_code(const PlanarMap& m) { return serialize(m); }

}  // namespace qm
