#include "surgery_sim.hpp"

#include <algorithm>
#include <cmath>

namespace qm {

namespace {

enum Stream : std::uint64_t { kDisplacement = 1, kVolume, kPlane, kPair, kGlued, kPilot, kCovPair, kCovPlane };

Rng stream_rng(std::uint64_t seed, Stream tag, std::uint64_t sub, std::uint64_t rep) {
  return make_rng(seed, (static_cast<std::uint64_t>(tag) << 40) | (sub << 32) | rep);
}

double r4(int r) { return std::pow(static_cast<double>(r), 4); }

// Ball profile up to r_max, with entries beyond the certified radius marked -1.
std::vector<std::int64_t> certified(std::vector<std::int64_t> prof, int r_star) {
  for (int r = 0; r < static_cast<int>(prof.size()); ++r)
    if (r > r_star) prof[r] = -1;
  return prof;
}

}  // namespace

Lattice lattice_of(FenceVariant v) { return v == FenceVariant::Folded ? Lattice::Folded : Lattice::Glued; }

std::unique_ptr<Truncation> explore_ball(Lattice lattice, int r_target, std::int64_t budget, Rng rng,
                                         std::int64_t uipq_half) {
  auto t = std::make_unique<Truncation>(lattice, rng, budget, uipq_half);
  t->grow(r_target);
  return t;
}

DisplacementResult displacement_experiment(FenceVariant v, const std::vector<std::int64_t>& grid0, int reps,
                                           std::uint64_t seed, std::int64_t budget) {
  std::vector<std::int64_t> grid = grid0;
  std::sort(grid.begin(), grid.end());
  DisplacementResult res;
  for (int rep = 0; rep < reps; ++rep) {
    Truncation t(lattice_of(v), stream_rng(seed, kDisplacement, static_cast<std::uint64_t>(v), rep), budget);
    for (auto n : grid) {
      t.certify_boundary({n});
      int lab = t.label(t.boundary_metric(n));
      int rs = t.r_star();
      DisplacementRow row;
      row.rep = rep;
      row.n = n;
      row.hi = lab;
      row.lo = lab <= rs ? lab : rs + 1;
      row.faces = t.faces();
      if (row.lo > n) ++res.monotonicity_violations;
      res.rows.push_back(row);
    }
  }
  std::vector<double> xs, mlo, mhi;
  for (auto n : grid) {
    DisplacementPoint pt;
    pt.n = n;
    std::vector<double> lo, hi, scaled;
    for (const auto& r : res.rows) {
      if (r.n != n) continue;
      lo.push_back(r.lo);
      hi.push_back(r.hi);
      scaled.push_back(r.lo / std::sqrt(static_cast<double>(n)));
      pt.censored += !r.exact();
    }
    pt.samples = static_cast<int>(lo.size());
    pt.median_lo = median(lo);
    pt.median_hi = median(hi);
    pt.median_exact = pt.median_lo == pt.median_hi;
    pt.q10 = quantile(scaled, 0.1);
    pt.q50 = quantile(scaled, 0.5);
    pt.q90 = quantile(scaled, 0.9);
    res.points.push_back(pt);
    if (n > 0) {
      xs.push_back(static_cast<double>(n));
      mlo.push_back(pt.median_lo);
      mhi.push_back(pt.median_hi);
    }
  }
  if (xs.size() >= 2) {
    res.slope_lo = loglog_fit(xs, mlo);
    res.slope_hi = loglog_fit(xs, mhi);
  }
  return res;
}

VolumeResult volume_experiment(Lattice lattice, const std::vector<int>& grid0, int reps, std::uint64_t seed,
                               std::int64_t budget) {
  std::vector<int> grid = grid0;
  std::sort(grid.begin(), grid.end());
  VolumeResult res;
  res.lattice = lattice;
  int rmax = grid.back();
  for (int rep = 0; rep < reps; ++rep) {
    Truncation t(lattice, stream_rng(seed, kVolume, static_cast<std::uint64_t>(lattice), rep), budget);
    t.grow(rmax);
    int rs = t.r_star();
    int top = std::min(rmax, std::max(rs, 0));
    auto ball = t.ball_profile(top), inner = t.inner_ball_profile(top);
    std::int64_t prev = 0;
    for (int r : grid) {
      VolumeRow row;
      row.rep = rep;
      row.r = r;
      row.certified = r <= rs;
      row.ball = row.certified ? ball[r] : -1;
      row.inner = row.certified ? inner[r] : -1;
      if (row.certified) {
        if (row.ball < prev) ++res.monotonicity_violations;
        prev = row.ball;
      }
      res.rows.push_back(row);
    }
  }
  std::vector<double> xs, ys;
  for (int r : grid) {
    VolumePoint pt;
    pt.r = r;
    std::vector<double> b, in;
    for (const auto& row : res.rows) {
      if (row.r != r) continue;
      if (!row.certified) {
        ++pt.censored;
        continue;
      }
      b.push_back(static_cast<double>(row.ball));
      in.push_back(static_cast<double>(row.inner));
    }
    pt.samples = static_cast<int>(b.size());
    pt.ball = mean_se(b);
    pt.inner = mean_se(in);
    pt.normalized = pt.ball.mean / r4(r);
    res.points.push_back(pt);
    if (r > 0 && pt.samples > 0) xs.push_back(r), ys.push_back(pt.ball.mean);
  }
  if (xs.size() >= 2) res.slope = loglog_fit(xs, ys);
  return res;
}

SingularityResult singularity_experiment(const std::vector<int>& r_grid, const std::vector<double>& alphas, int reps,
                                         std::uint64_t seed, std::int64_t budget) {
  SingularityResult res;
  res.grid = r_grid;
  std::sort(res.grid.begin(), res.grid.end());
  int rmax = res.grid.back();
  size_t G = res.grid.size();
  for (int rep = 0; rep < reps; ++rep) {
    Truncation q(Lattice::UIPQ, stream_rng(seed, kPlane, 0, rep), budget);
    q.grow(rmax);
    auto bq = certified(q.ball_profile(std::min(rmax, std::max(q.r_star(), 0))), q.r_star());
    Truncation h1(Lattice::UIHPQ, stream_rng(seed, kPair, 0, rep), budget);
    Truncation h2(Lattice::UIHPQ, stream_rng(seed, kPair, 1, rep), budget);
    h1.grow(rmax);
    h2.grow(rmax);
    int rs = std::min(h1.r_star(), h2.r_star());
    int top = std::min(rmax, std::max(rs, 0));
    auto i1 = h1.inner_ball_profile(top), i2 = h2.inner_ball_profile(top);
    std::vector<std::int64_t> prow(G, -1), yrow(G, -1);
    for (size_t g = 0; g < G; ++g) {
      int r = res.grid[g];
      if (r < static_cast<int>(bq.size())) prow[g] = bq[r];
      if (r <= rs) yrow[g] = i1[r] + i2[r];
    }
    res.plane_balls.push_back(prow);
    res.pair_sums.push_back(yrow);

    // glued sample: the whole ball against the two half balls in their own metrics
    Truncation gl(Lattice::Glued, stream_rng(seed, kGlued, 0, rep), budget);
    gl.grow(rmax);
    int grs = std::min(rmax, gl.r_star());
    if (grs >= 0) {
      auto whole = gl.ball_profile(grs);
      auto a = gl.half_inner_ball_profile(0, grs), b = gl.half_inner_ball_profile(1, grs);
      for (int r : res.grid) {
        if (r > grs) continue;
        for (double al : alphas) {
          bool X = static_cast<double>(whole[r]) > al * r4(r);
          bool Y = static_cast<double>(a[r] + b[r]) > al * r4(r);
          ++res.dominance_checked;
          if (Y && !X) ++res.dominance_failures;
        }
      }
    }
  }
  for (size_t g = 0; g < G; ++g) {
    int r = res.grid[g];
    for (double al : alphas) {
      ProbabilityRow row;
      row.r = r;
      row.alpha = al;
      for (int rep = 0; rep < reps; ++rep) {
        if (res.plane_balls[rep][g] >= 0) {
          ++row.x_n;
          row.x_hits += static_cast<double>(res.plane_balls[rep][g]) > al * r4(r);
        }
        if (res.pair_sums[rep][g] >= 0) {
          ++row.y_n;
          row.y_hits += static_cast<double>(res.pair_sums[rep][g]) > al * r4(r);
        }
      }
      row.x_ci = wilson(row.x_hits, row.x_n);
      row.y_ci = wilson(row.y_hits, row.y_n);
      res.scan.push_back(row);
    }
  }
  res.largest_r = rmax;
  double best_gap = -1;
  for (const auto& row : res.scan) {
    if (row.r != rmax || !row.separated()) continue;
    double gap = row.y_ci.lo - row.x_ci.hi;
    if (gap > best_gap) best_gap = gap, res.best_alpha = row.alpha, res.separated_alpha_found = true;
  }
  return res;
}

CovarianceResult covariance_scan(const std::vector<int>& r_grid, int reps, std::uint64_t seed, std::int64_t budget,
                                 int pilot, int bootstrap) {
  CovarianceResult res;
  res.grid = r_grid;
  std::sort(res.grid.begin(), res.grid.end());
  res.reps = reps;
  size_t G = res.grid.size();
  int rmax = res.grid.back();

  auto pair_profile = [&](Stream tag, int rep, std::vector<double>& out) {
    Truncation a(Lattice::UIHPQ, stream_rng(seed, tag, 0, rep), budget);
    Truncation b(Lattice::UIHPQ, stream_rng(seed, tag, 1, rep), budget);
    a.grow(rmax);
    b.grow(rmax);
    int rs = std::min({a.r_star(), b.r_star(), rmax});
    if (rs < rmax) return false;
    auto pa = a.inner_ball_profile(rmax), pb = b.inner_ball_profile(rmax);
    out.clear();
    for (int r : res.grid) out.push_back(static_cast<double>(pa[r] + pb[r]));
    return true;
  };
  auto plane_profile = [&](Stream tag, int rep, std::vector<double>& out) {
    Truncation q(Lattice::UIPQ, stream_rng(seed, tag, 2, rep), budget);
    q.grow(rmax);
    if (q.r_star() < rmax) return false;
    auto p = q.ball_profile(rmax);
    out.clear();
    for (int r : res.grid) out.push_back(static_cast<double>(p[r]));
    return true;
  };

  // thresholds alpha_r r^4 at the pilot medians, so every indicator is non-degenerate
  std::vector<std::vector<double>> py(G), px(G);
  std::vector<double> buf;
  for (int rep = 0; rep < pilot; ++rep) {
    if (pair_profile(kPilot, rep, buf))
      for (size_t g = 0; g < G; ++g) py[g].push_back(buf[g]);
    if (plane_profile(kPilot, rep, buf))
      for (size_t g = 0; g < G; ++g) px[g].push_back(buf[g]);
  }
  std::vector<double> ty(G), tx(G);
  for (size_t g = 0; g < G; ++g) {
    ty[g] = median(py[g]);
    tx[g] = median(px[g]);
    res.thresholds.push_back(ty[g] / r4(res.grid[g]));
  }

  std::vector<std::vector<double>> Y(G), X(G);
  for (int rep = 0; rep < reps; ++rep) {
    if (pair_profile(kCovPair, rep, buf)) {
      for (size_t g = 0; g < G; ++g) Y[g].push_back(buf[g] > ty[g] ? 1.0 : 0.0);
    } else {
      ++res.censored;
    }
    if (plane_profile(kCovPlane, rep, buf)) {
      for (size_t g = 0; g < G; ++g) X[g].push_back(buf[g] > tx[g] ? 1.0 : 0.0);
    } else {
      ++res.censored;
    }
  }
  Rng boot = make_rng(seed, 0xB007);
  auto fill = [&](const std::vector<std::vector<double>>& Z, std::vector<std::vector<double>>& cov,
                  std::vector<std::vector<double>>& se) {
    cov.assign(G, std::vector<double>(G, 0));
    se.assign(G, std::vector<double>(G, 0));
    for (size_t i = 0; i < G; ++i)
      for (size_t j = 0; j < G; ++j) {
        if (Z[i].size() < 2) continue;
        cov[i][j] = covariance(Z[i], Z[j]);
        se[i][j] = bootstrap_cov_se(Z[i], Z[j], bootstrap, boot);
      }
  };
  fill(Y, res.cov_y, res.se_y);
  fill(X, res.cov_x, res.se_x);
  return res;
}

}  // namespace qm
