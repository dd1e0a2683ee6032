#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fence.hpp"
#include "stats.hpp"
#include "truncation.hpp"

namespace qm {

Lattice lattice_of(FenceVariant v);

std::unique_ptr<Truncation> explore_ball(Lattice lattice, int r_target, std::int64_t budget, Rng rng,
                                         std::int64_t uipq_half = 1);

// d(P_0, P_n) is known to lie in [lo, hi]; lo == hi when certified.
struct DisplacementRow {
  int rep = 0;
  std::int64_t n = 0;
  int lo = 0, hi = 0;
  std::int64_t faces = 0;
  bool exact() const { return lo == hi; }
};
struct DisplacementPoint {
  std::int64_t n = 0;
  int samples = 0, censored = 0;
  double median_lo = 0, median_hi = 0;
  bool median_exact = false;
  double q10 = 0, q50 = 0, q90 = 0;  // of lo / sqrt(n)
};
struct DisplacementResult {
  std::vector<DisplacementRow> rows;
  std::vector<DisplacementPoint> points;
  Fit slope_lo, slope_hi;
  std::int64_t monotonicity_violations = 0;  // d after surgery exceeding the boundary distance n
};
DisplacementResult displacement_experiment(FenceVariant v, const std::vector<std::int64_t>& grid, int reps,
                                           std::uint64_t seed, std::int64_t budget);

struct VolumeRow {
  int rep = 0, r = 0;
  std::int64_t ball = 0, inner = 0;
  bool certified = true;
};
struct VolumePoint {
  int r = 0;
  int samples = 0, censored = 0;
  MeanSe ball, inner;
  double normalized = 0;  // mean ball / r^4
};
struct VolumeResult {
  Lattice lattice = Lattice::UIHPQ;
  std::vector<VolumeRow> rows;
  std::vector<VolumePoint> points;
  Fit slope;
  std::int64_t monotonicity_violations = 0;
};
VolumeResult volume_experiment(Lattice lattice, const std::vector<int>& grid, int reps, std::uint64_t seed,
                               std::int64_t budget);

struct ProbabilityRow {
  int r = 0;
  double alpha = 0;
  std::int64_t x_hits = 0, x_n = 0, y_hits = 0, y_n = 0;
  Interval x_ci, y_ci;
  bool separated() const { return y_ci.lo > x_ci.hi; }
};
struct SingularityResult {
  std::vector<ProbabilityRow> scan;
  std::int64_t dominance_checked = 0, dominance_failures = 0;
  int largest_r = 0;
  bool separated_alpha_found = false;
  double best_alpha = 0;
  // per-sample raw volumes, for the CSV
  std::vector<std::vector<std::int64_t>> plane_balls, pair_sums;
  std::vector<int> grid;
};
SingularityResult singularity_experiment(const std::vector<int>& r_grid, const std::vector<double>& alphas, int reps,
                                         std::uint64_t seed, std::int64_t budget);

struct CovarianceResult {
  std::vector<int> grid;
  std::vector<double> thresholds;                  // alpha_r calibrated on a pilot stream
  std::vector<std::vector<double>> cov_y, se_y;    // pairs of half-planes
  std::vector<std::vector<double>> cov_x, se_x;    // plane
  int reps = 0;
  std::int64_t censored = 0;
};
CovarianceResult covariance_scan(const std::vector<int>& r_grid, int reps, std::uint64_t seed, std::int64_t budget,
                                 int pilot = 100, int bootstrap = 400);

}  // namespace qm
