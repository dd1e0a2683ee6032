#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "peeling.hpp"
#include "planar_map.hpp"
#include "rng.hpp"

namespace qm {

enum class HoleLaw : std::uint8_t { HalfPlane, Plane, Boltzmann };

struct HoleInfo {
  HoleLaw law = HoleLaw::Boltzmann;
  std::int64_t half = 0;  // half-perimeter, unused for half-plane holes
};

// A half-plane boundary x_lo .. x_hi, closed through a virtual vertex at infinity.
// ext(i) is the external-side half-edge x_{i+1} -> x_i; its twin lies on the hole.
struct Line {
  int inf = -1;
  int sR = -1, sL = -1;  // hole-side sentinels x_hi -> inf and inf -> x_lo
  int hole = -1, outer = -1;
  std::int64_t lo = 0, hi = 0;
  std::vector<int> vpos, vneg;  // x_i for i >= 0, x_{-i} for i >= 1
  std::vector<int> epos, eneg;  // ext(i) for i >= 0, ext(-i) for i >= 1

  int vertex(std::int64_t i) const { return i >= 0 ? vpos[i] : vneg[-i]; }
  int ext(std::int64_t i) const { return i >= 0 ? epos[i] : eneg[-i]; }
};

struct PeelResult {
  int face = -1;
  int corner[4] = {-1, -1, -1, -1};  // x0, x1, c, d
  bool fresh[4] = {false, false, false, false};
  int side[3] = {-1, -1, -1};        // s1: x1->c, s2: c->d, s3: d->x0 (inside the new face)
  int main_hole = -1;
  std::vector<int> new_holes;
};

class PeelMap {
 public:
  PlanarMap m;
  std::vector<HoleInfo> hole;  // by face id
  std::vector<Line> lines;
  std::int64_t faces_revealed = 0;
  // Called for every boundary vertex created by window growth: (vertex, line, index).
  std::function<void(int, int, std::int64_t)> on_boundary_vertex;

  // Lines with windows [-L, L]; root = interior side of x_0 -> x_1 on line 0.
  static PeelMap half_planes(int count, std::int64_t L);
  // A 2p-gon whose interior is one hole; root = x_0 -> x_1 on the hole side.
  static PeelMap polygon(std::int64_t p, HoleLaw law);

  bool is_hole(int h) const { return m.faces[m.face[h]].kind == FaceKind::Hole; }
  int line_of(int virtual_vertex) const;
  void extend_right(int line);
  void extend_left(int line);

  // E_j along the hole boundary of e (E_0 = e), growing windows as needed.
  int walk(int e, std::int64_t j);
  PeelResult peel(int e, const PeelEvent& ev);
  // Closes a 2-gon hole by gluing its two sides.
  void collapse(int e);

 private:
  int step_forward(int h);
  int step_backward(int h);
  int new_hole(HoleLaw law, std::int64_t half);
};

// Boltzmann map of the 2p-gon by recursive peeling; nullopt once more than `budget` faces appear.
std::optional<PlanarMap> sample_boltzmann(std::int64_t p, std::int64_t budget, Rng& rng, std::int64_t* faces = nullptr);

}  // namespace qm
