#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qm {

enum class FaceKind : std::uint8_t { Inner = 0, External = 1, Hole = 2, Dead = 3 };

struct FaceRec {
  FaceKind kind = FaceKind::Inner;
  int anchor = -1;        // some half-edge of the face
  bool infinite = false;  // the unbounded side, for hulls
};

// Half-edge map. Each half-edge h has its face on the left; fnext walks the
// face counterclockwise. sigma(h) = fnext(twin(h)) is the next outgoing
// half-edge around origin(h). A half-edge with twin == -1 is dead.
struct PlanarMap {
  std::vector<int> twin, fnext, fprev, origin, face;
  std::vector<int> vrep;                 // outgoing half-edge per vertex, -1 when dead
  std::vector<std::uint8_t> vvirtual;    // sentinel vertices, ignored by distances
  std::vector<FaceRec> faces;
  int root = -1;

  int add_vertex(bool is_virtual = false);
  int add_face(FaceKind kind);
  // New edge u -> v. Returns h (u->v); its twin is h + 1. Links are left unset.
  int add_edge(int u, int v);
  void link(int a, int b) { fnext[a] = b; fprev[b] = a; }

  int head(int h) const { return origin[twin[h]]; }
  int sigma(int h) const { return fnext[twin[h]]; }
  int sigma_inv(int h) const { return twin[fprev[h]]; }
  bool alive(int h) const { return twin[h] >= 0; }
  bool is_virtual(int h) const { return vvirtual[origin[h]] || vvirtual[head(h)]; }
  FaceKind kind_of(int h) const { return faces[face[h]].kind; }

  int num_half_edges() const { return static_cast<int>(twin.size()); }
  int num_vertex_slots() const { return static_cast<int>(vrep.size()); }
  int live_half_edges() const;
  int live_vertices() const;
  int live_faces() const;
  int face_degree(int f) const;
  int count_faces(FaceKind k) const;

  // Recompute vertices as sigma-orbits of live half-edges. Returns the new vertex of each old
  // vertex that survives as a single orbit (or one of them, for split vertices).
  std::vector<int> rebuild_vertices();
  // Recompute faces as fnext-orbits, keeping the kind of each orbit's previous face id.
  void rebuild_faces();
  // Renumber live elements in breadth-first order from the root; deterministic and canonical.
  // label_out, if given, receives the new id of every old half-edge (-1 for dropped ones).
  PlanarMap compacted(std::vector<int>* label_out = nullptr) const;
};

// Boundary of a map whose external face lies right of the root: e_0 = root, e_{i+1} the next
// interior-side boundary half-edge. x_i = origin(e_i).
std::vector<int> boundary_edges(const PlanarMap& m);
int external_face(const PlanarMap& m);

struct Saw {
  int b = 0, f = 1;
  std::vector<int> edges;  // edges[i + b] = e_i for -b <= i < f
  int at(int i) const { return edges[i + b]; }
};

std::vector<std::string> validate_saw(const PlanarMap& m, const Saw& w);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Structural checks plus degree-4 inner faces. With simple_boundary, the face right of the root
// is the external face and must be a simple even cycle.
ValidationReport validate_quadrangulation(const PlanarMap& m, bool has_boundary, bool simple_boundary);

// Unit-length distances over non-virtual vertices; -1 when unreachable.
std::vector<int> bfs_distances(const PlanarMap& m, const std::vector<int>& sources);

// Inner faces with a vertex within r of origin(root), complement regions become external faces.
PlanarMap ball(const PlanarMap& m, int r);
// Faces of ball(m, r) as a subset of m's faces.
std::vector<std::uint8_t> ball_faces(const PlanarMap& m, int r);

// Region plus all complementary components not containing an infinite face.
std::vector<std::uint8_t> hull(const PlanarMap& m, const std::vector<std::uint8_t>& region);

PlanarMap reroot_boundary(const PlanarMap& bm, long k);

// `id twin next origin` per half-edge, next = sigma; compacted first.
std::string serialize(const PlanarMap& m);
PlanarMap parse_map(const std::string& text);
std::string serialize_saw(const Saw& w);
Saw parse_saw(const std::string& line);
// Canonical code of the rooted map (serialization of the compacted map).
std::string canonical_code(const PlanarMap& m);

}  // namespace qm
