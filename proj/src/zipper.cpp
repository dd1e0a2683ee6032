#include "zipper.hpp"

#include <stdexcept>

namespace qm {

namespace {

int mod(long a, long n) { return static_cast<int>(((a % n) + n) % n); }

bool single_edge(const PlanarMap& m) { return m.live_half_edges() == 2; }

}  // namespace

SawMap zip(const PlanarMap& bm, int b, int f) {
  if (b < 0 || f < 1) throw std::invalid_argument("zip needs b >= 0, f >= 1");
  auto rep = validate_quadrangulation(bm, true, true);
  if (!rep.ok()) throw std::invalid_argument("zip needs a simple boundary: " + rep.violations.front());
  auto be = boundary_edges(bm);
  int P = static_cast<int>(be.size());
  if (single_edge(bm)) {
    if (b != 0 || f != 1) throw std::invalid_argument("the edge map only carries a (0,1) walk");
    SawMap out{bm.compacted(), Saw{0, 1, {}}};
    out.map.faces[external_face(out.map)].kind = FaceKind::Inner;
    out.saw.edges = {out.map.root};
    return out;
  }
  if (P != 2 * (b + f)) throw std::invalid_argument("zip needs b + f = p");
  PlanarMap m = bm;
  int ext = external_face(bm);
  for (int i = 0; i < P; ++i) {
    int j = mod(2L * f - 1 - i, P);
    if (i > j) continue;
    int a = be[i], c = be[j];
    int ta = m.twin[a], tc = m.twin[c];
    m.twin[ta] = m.twin[tc] = -1;
    m.face[ta] = m.face[tc] = -1;
    m.twin[a] = c;
    m.twin[c] = a;
  }
  m.faces[ext].kind = FaceKind::Dead;
  m.rebuild_vertices();
  m.rebuild_faces();
  std::vector<int> label;
  SawMap out{m.compacted(&label), Saw{b, f, {}}};
  for (int i = -b; i < f; ++i) out.saw.edges.push_back(label[be[mod(i, P)]]);
  return out;
}

PlanarMap unzip(const PlanarMap& m0, const Saw& w) {
  auto errs = validate_saw(m0, w);
  if (!errs.empty()) throw std::invalid_argument("unzip: " + errs.front());
  if (single_edge(m0)) {
    if (w.b != 0 || w.f != 1) throw std::invalid_argument("unzip: the edge map only carries a (0,1) walk");
    PlanarMap out = m0.compacted();
    out.faces[out.face[out.root]].kind = FaceKind::External;
    return out;
  }
  int p = w.b + w.f, P = 2 * p;
  std::vector<int> B(P, -1);
  for (int i = -w.b; i < w.f; ++i) {
    B[mod(i, P)] = w.at(i);
    B[mod(2L * w.f - 1 - i, P)] = m0.twin[w.at(i)];
  }
  PlanarMap m = m0;
  int ext = m.add_face(FaceKind::External);
  std::vector<int> X(P);
  for (int j = 0; j < P; ++j) {
    int h = m.num_half_edges();
    m.twin.push_back(B[j]);
    m.fnext.push_back(-1);
    m.fprev.push_back(-1);
    m.face.push_back(ext);
    m.origin.push_back(m0.origin[B[mod(j + 1, P)]]);
    X[j] = h;
  }
  for (int j = 0; j < P; ++j) m.twin[B[j]] = X[j];
  for (int j = 0; j < P; ++j) m.link(X[j], X[mod(j - 1, P)]);
  m.root = w.at(0);
  m.rebuild_vertices();
  m.rebuild_faces();
  return m.compacted();
}

namespace {

struct SawCounter {
  const PlanarMap& m;
  std::vector<char> visited;
  int b;

  ExactInt backward(int v, int left) {
    if (left == 0) return 1;
    ExactInt n = 0;
    int h0 = m.vrep[v], h = h0;
    do {
      int u = m.head(h);
      if (!m.is_virtual(h) && !visited[u]) {
        visited[u] = 1;
        n += backward(u, left - 1);
        visited[u] = 0;
      }
      h = m.sigma(h);
    } while (h != h0);
    return n;
  }

  ExactInt forward(int v, int left) {
    if (left == 0) return backward(m.origin[m.root], b);
    ExactInt n = 0;
    int h0 = m.vrep[v], h = h0;
    do {
      int u = m.head(h);
      if (!m.is_virtual(h) && !visited[u]) {
        visited[u] = 1;
        n += forward(u, left - 1);
        visited[u] = 0;
      }
      h = m.sigma(h);
    } while (h != h0);
    return n;
  }
};

}  // namespace

ExactInt count_saws(const PlanarMap& m, int b, int f) {
  if (b < 0 || f < 1) throw std::invalid_argument("count_saws needs b >= 0, f >= 1");
  SawCounter c{m, std::vector<char>(m.num_vertex_slots(), 0), b};
  c.visited[m.origin[m.root]] = 1;
  c.visited[m.head(m.root)] = 1;
  return c.forward(m.head(m.root), f - 1);
}

}  // namespace qm
