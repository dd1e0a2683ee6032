#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "peel_map.hpp"
#include "rng.hpp"

namespace qm {

enum class Lattice : std::uint8_t { UIHPQ, UIPQ, Folded, Glued };
std::string lattice_name(Lattice l);
Lattice parse_lattice(const std::string& s);

constexpr int kUnlabelled = 1 << 30;

// Explored piece of an infinite lattice. Vertices of the peeling structure are grouped into
// metric vertices (boundary identifications of the fold and the glue); labels are distances
// in the explored graph, exact up to the minimum frontier label.
class Truncation {
 public:
  Truncation(Lattice lattice, Rng rng, std::int64_t budget, std::int64_t uipq_half = 1);
  Truncation(const Truncation&) = delete;
  Truncation& operator=(const Truncation&) = delete;

  // Peel at the lowest frontier until every frontier label exceeds r_target.
  // Returns false when the face budget runs out; the truncation stays usable up to r_star().
  bool grow(int r_target);
  // Peel until the given boundary indices carry certified labels.
  bool certify_boundary(const std::vector<std::int64_t>& indices, int line = 0);
  bool step();

  int min_frontier_label();
  int r_star() { return min_frontier_label() - 1; }
  bool truncated() const { return truncated_; }
  std::int64_t faces() const { return pm_.faces_revealed; }
  std::int64_t budget() const { return budget_; }
  Lattice lattice() const { return lattice_; }

  int metric_of(int v) const { return metric_of_[v]; }
  int label(int metric) const { return label_[metric]; }
  int num_metric() const { return static_cast<int>(label_.size()); }
  // Metric vertex of boundary vertex x_i on a line, growing the window if needed.
  int boundary_metric(std::int64_t i, int line = 0);
  bool on_line(int metric) const { return on_line_[metric] != 0; }
  bool is_frontier(int metric) const;

  // Number of metric vertices in the ball of radius r (faces with a vertex at label <= r,
  // plus the root edge), for r = 0..r_max. Valid for r <= r_star().
  std::vector<std::int64_t> ball_profile(int r_max) const;
  // Same, counting only vertices off the boundary lines.
  std::vector<std::int64_t> inner_ball_profile(int r_max) const;
  // Inner-vertex ball profile of one glued half measured in its own metric.
  std::vector<std::int64_t> half_inner_ball_profile(int line, int r_max) const;
  // Distances inside one line's own component from its x_0 (no identifications), by geometric vertex.
  std::vector<int> half_distances(int line) const;

  const PeelMap& peel_map() const { return pm_; }
  PeelMap& peel_map() { return pm_; }

 private:
  void add_geometric(int v);
  void on_new_boundary(int v, int line, std::int64_t index);
  void attach_boundary(int v, int line, std::int64_t index);
  std::int64_t boundary_key(int line, std::int64_t index) const;
  void relax_edge(int h);
  void propagate();
  void set_label(int metric, int value);
  int frontier_edge(int metric) const;
  void push_bucket(int metric);
  template <class F>
  void for_each_out(int metric, F&& f) const;

  Lattice lattice_;
  Rng rng_;
  std::int64_t budget_;
  bool truncated_ = false;
  PeelMap pm_;
  std::vector<int> metric_of_;                  // geometric -> metric
  std::vector<std::array<int, 2>> copies_;      // metric -> geometric
  std::vector<int> label_;
  std::vector<std::uint8_t> on_line_;
  std::unordered_map<std::int64_t, int> key_to_metric_;
  std::vector<std::vector<int>> buckets_;
  size_t cursor_ = 0;
  int top_edge_ = -1;  // frontier half-edge found by the last min_frontier_label()
  std::vector<int> queue_;
};

}  // namespace qm
