#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "peeling.hpp"
#include "planar_map.hpp"
#include "rng.hpp"

namespace qm {

struct FenceRecord {
  std::int64_t T = 0;        // index of the stopping step
  std::int64_t right = 0;    // r = rho_T - k
  std::int64_t left = 0;     // l = 1 - (leftmost boundary index touched)
  std::int64_t length = 0;   // number of edges of the fence path
  bool truncated = false;
  std::vector<int> path;     // vertex sequence from v_{1-l} to v_{r+k} (geometric mode)
  std::vector<std::int64_t> path_index;  // boundary index of each path vertex, INT64_MIN if inner
  std::vector<int> faces;    // revealed faces f_0..f_T (geometric mode)
};

// Fence bookkeeping on an event stream, without building the map.
class FenceTracker {
 public:
  explicit FenceTracker(std::int64_t k) : k_(k) {}
  // Feeds one event; returns true once the fence is complete.
  bool feed(const PeelEvent& ev);
  FenceRecord record() const;
  std::int64_t steps() const { return steps_; }

 private:
  std::int64_t k_;
  std::int64_t N_ = 0, min_ = 0, rho_ = 1, steps_ = 0;
  bool done_ = false;
};

FenceRecord build_fence(std::int64_t k, Rng& rng, std::int64_t max_steps = 1 << 30);
// Same stream, materialized in a half-plane peeling map.
FenceRecord build_fence_geometric(std::int64_t k, Rng& rng, std::int64_t max_steps = 1 << 30);

// A finite map containing the faces a fence run reveals. index[v] is the boundary index of v
// (or kNotBoundary); line[i] is the half-edge v_i -> v_{i+1} seen from the explored side.
constexpr int kNotBoundary = INT32_MIN;
struct FenceFixture {
  PlanarMap map;
  std::vector<int> index;
  std::unordered_map<std::int64_t, int> line;
  std::int64_t k = 1;
};

// Runs the fence loop by reading faces off the fixture. Throws if a needed face is not inner.
FenceRecord run_fence(const FenceFixture& fx);
// Undirected edge ids (min half-edge) of the inner boundary of the hull of the revealed faces.
std::vector<int> fence_edges(const FenceFixture& fx, const FenceRecord& rec);
// Mirror image with boundary relabelled v'_i = v_{k+1-i}.
FenceFixture mirrored(const FenceFixture& fx);
PlanarMap mirror_map(const PlanarMap& m);
struct FlipResult {
  FenceRecord original, flipped;
  bool swapped = false, same_fence = false;
  bool ok() const { return swapped && same_fence; }
};
FlipResult flip_check(const FenceFixture& fx);
// Hand-encoded worked example, k = 3: T = 4, left overshoot 5, right overshoot 3.
FenceFixture worked_fixture();
// Random fixture: a Boltzmann 2p-gon cut open at an edge, protected length k < 2p.
FenceFixture boltzmann_fixture(std::int64_t p, std::int64_t k, Rng& rng);

struct YWalkSummary {
  std::int64_t steps = 0;
  std::int64_t final_value = 0;
  std::int64_t infimum = 0;
  std::int64_t inf_step = 0;  // last step at which the infimum was reached
  double sum_inc = 0, sum_inc2 = 0;
  std::vector<std::int64_t> values;  // Y_0..Y_steps when recorded
};
YWalkSummary y_walk(std::int64_t steps, Rng& rng, bool record = false);

struct TailRow {
  std::int64_t n = 0;
  double p = 0, scaled = 0;  // P(X <= -n), sqrt(n) P(X <= -n)
};
std::vector<TailRow> overshoot_tail(const std::vector<std::int64_t>& X, const std::vector<std::int64_t>& grid);

enum class FenceVariant : std::uint8_t { Folded, Glued };
struct FenceLevel {
  std::int64_t k = 0, right = 0, left = 0, radius = 0;
  bool truncated = false;
};
std::vector<FenceLevel> iterate_fences(std::int64_t count, FenceVariant v, Rng& rng, std::int64_t max_steps = 1 << 26);

}  // namespace qm
