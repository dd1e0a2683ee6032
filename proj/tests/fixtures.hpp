#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planar_map.hpp"

namespace fx {

// Half-edge names "u>v" or "u>v:tag"; the twin of "u>v:tag" is "v>u:tag".
// Each face lists its half-edges counterclockwise (face on the left).
struct Face {
  std::vector<std::string> hes;
  qm::FaceKind kind = qm::FaceKind::Inner;
  bool infinite = false;
};

struct Built {
  qm::PlanarMap map;
  std::map<std::string, int> he;      // name -> half-edge id
  std::map<std::string, int> vertex;  // name -> vertex id
  std::vector<int> face_of_spec;      // face id per Face spec
};

inline std::pair<std::string, std::string> ends(const std::string& name, std::string* tag) {
  auto gt = name.find('>');
  auto colon = name.find(':');
  std::string u = name.substr(0, gt);
  std::string v = name.substr(gt + 1, colon == std::string::npos ? std::string::npos : colon - gt - 1);
  *tag = colon == std::string::npos ? "" : name.substr(colon);
  return {u, v};
}

inline Built build(const std::vector<Face>& faces, const std::string& root, const std::vector<std::string>& virtual_vertices = {}) {
  Built b;
  auto& m = b.map;
  auto vid = [&](const std::string& n) {
    auto it = b.vertex.find(n);
    if (it != b.vertex.end()) return it->second;
    bool virt = false;
    for (const auto& x : virtual_vertices) virt |= x == n;
    int v = m.add_vertex(virt);
    b.vertex[n] = v;
    return v;
  };
  for (const auto& f : faces)
    for (const auto& name : f.hes) {
      if (b.he.count(name)) throw std::logic_error("half-edge listed twice: " + name);
      std::string tag;
      auto [u, v] = ends(name, &tag);
      int h = m.num_half_edges();
      m.twin.push_back(-1);
      m.fnext.push_back(-1);
      m.fprev.push_back(-1);
      m.face.push_back(-1);
      m.origin.push_back(vid(u));
      (void)vid(v);
      b.he[name] = h;
    }
  for (const auto& [name, h] : b.he) {
    std::string tag;
    auto [u, v] = ends(name, &tag);
    auto it = b.he.find(v + ">" + u + tag);
    if (it == b.he.end()) throw std::logic_error("missing twin for " + name);
    m.twin[h] = it->second;
  }
  for (const auto& f : faces) {
    int id = m.add_face(f.kind);
    m.faces[id].infinite = f.infinite;
    b.face_of_spec.push_back(id);
    int n = static_cast<int>(f.hes.size());
    for (int i = 0; i < n; ++i) {
      int h = b.he[f.hes[i]];
      m.link(h, b.he[f.hes[(i + 1) % n]]);
      m.face[h] = id;
    }
    m.faces[id].anchor = b.he[f.hes[0]];
  }
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (m.vrep[m.origin[h]] < 0) m.vrep[m.origin[h]] = h;
  m.root = b.he.at(root);
  return b;
}

inline std::string E(const std::string& u, const std::string& v) { return u + ">" + v; }

// n x n grid of squares; vertex "i,j"; root (0,0) -> (1,0) with the outside on its right.
inline Built grid(int n) {
  std::vector<Face> faces;
  auto V = [](int i, int j) { return std::to_string(i) + "," + std::to_string(j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      faces.push_back({{E(V(i, j), V(i + 1, j)), E(V(i + 1, j), V(i + 1, j + 1)), E(V(i + 1, j + 1), V(i, j + 1)),
                        E(V(i, j + 1), V(i, j))}});
  Face ext{{}, qm::FaceKind::External, true};
  for (int j = 0; j < n; ++j) ext.hes.push_back(E(V(0, j), V(0, j + 1)));
  for (int i = 0; i < n; ++i) ext.hes.push_back(E(V(i, n), V(i + 1, n)));
  for (int j = n; j > 0; --j) ext.hes.push_back(E(V(n, j), V(n, j - 1)));
  for (int i = n; i > 0; --i) ext.hes.push_back(E(V(i, 0), V(i - 1, 0)));
  faces.push_back(ext);
  return build(faces, E(V(0, 0), V(1, 0)));
}

}  // namespace fx
