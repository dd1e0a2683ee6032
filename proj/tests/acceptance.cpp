// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned below.
//   qmaps_acceptance [--out DIR] [--seed S] [--quick] [--only 1,3,9]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"
#include "enumeration.hpp"
#include "fence.hpp"
#include "peel_map.hpp"
#include "peeling.hpp"
#include "runner.hpp"
#include "small_enum.hpp"
#include "stats.hpp"
#include "surgery_sim.hpp"
#include "zipper.hpp"

using namespace qm;
namespace fs = std::filesystem;

namespace {

// tolerances
constexpr double kMassResidual = 1e-12;
constexpr double kSigmas = 3.0;
constexpr double kSwallowSlope = -2.5, kSwallowTol = 0.2;
constexpr double kTrendSlopeMax = 0.1;  // log-log slope of sqrt(n) P(X <= -n)
constexpr double kMaxOvershootSlope = -0.5, kMaxOvershootTol = 0.15;
constexpr double kKsLevel = 0.01;
constexpr double kChiLevel = 0.01;
constexpr double kNestingFactor = 3.0;
constexpr double kDiffSlope = 0.5, kDiffTol = 0.1;
constexpr double kVolSlope = 4.0, kVolTol = 0.5;
constexpr double kRatioLo = 0.9, kRatioHi = 1.7;
constexpr double kCovSe = 2.0;

struct Sizes {
  int peel_steps = 1000000;
  std::int64_t ywalk_steps = 10000000;
  int tail_samples = 10000;
  std::int64_t tail_walk = 100000;
  int fence_samples = 10000;
  int boltz_samples = 100000;
  int nest_reps = 1000;
  int disp_reps = 200;
  int vol_reps = 100;
  int sing_reps = 200;
  int cov_reps = 300;
  std::int64_t budget = 4000000;
  std::int64_t vol_budget = 8000000;
};

Sizes quick_sizes() {
  Sizes s;
  s.peel_steps = 200000;
  s.ywalk_steps = 1000000;
  s.tail_samples = 2000;
  s.tail_walk = 20000;
  s.fence_samples = 2000;
  s.boltz_samples = 20000;
  s.nest_reps = 100;
  s.disp_reps = 20;
  s.vol_reps = 10;
  s.sing_reps = 40;
  s.cov_reps = 60;
  s.budget = 1000000;
  s.vol_budget = 2000000;
  return s;
}

struct Verdict {
  int id = 0;
  bool pass = false;
  bool gating = true;
  std::string measured, target;
};

std::vector<Verdict> g_verdicts;

void report(int id, bool pass, const std::string& measured, const std::string& target, bool gating = true) {
  g_verdicts.push_back({id, pass, gating, measured, target});
  std::printf("criterion %2d: %s%s | %s | target %s\n", id, pass ? "PASS" : "FAIL", gating ? "" : " (soft, non-gating)",
              measured.c_str(), target.c_str());
  std::fflush(stdout);
}

std::string f6(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

std::string frac(const ExactRational& q) { return to_string(numer(q)) + "/" + to_string(denom(q)); }

// Log-binned density over [k, 2k): mass / width, for bins starting at powers of two in [lo, hi).
std::pair<std::vector<double>, std::vector<double>> binned(const std::function<double(std::int64_t)>& mass_in_bin,
                                                           std::int64_t lo, std::int64_t hi) {
  std::vector<double> x, y;
  for (std::int64_t k = lo; k < hi; k *= 2) {
    double m = mass_in_bin(k);
    if (m <= 0) continue;
    x.push_back(std::sqrt(static_cast<double>(k) * static_cast<double>(2 * k - 1)));
    y.push_back(m / static_cast<double>(k));
  }
  return {x, y};
}

// 1
void c_counts() {
  bool ok = true;
  int cells = 0;
  for (const auto& r : verify_counts(4, 3)) {
    ok &= r.ok;
    ++cells;
  }
  report(1, ok, std::to_string(cells) + " (n,p) cells, enumeration == formula: " + (ok ? "all" : "not all"),
         "exact equality for n <= 4, p <= 3");
}

// 2
void c_zipper() {
  std::int64_t trips = 0, bad = 0;
  for (int p = 1; p <= 3; ++p)
    for (int n = 0; n <= 3; ++n)
      for (const auto& m : enumerate(n, p)) {
        std::string code = canonical_code(m);
        for (int f = 1; f <= p; ++f) {
          auto z = zip(m, p - f, f);
          ++trips;
          if (canonical_code(unzip(z.map, z.saw)) != code) ++bad;
        }
      }
  bool sums = true;
  for (int n = 0; n <= 3; ++n) {
    std::vector<PlanarMap> spheres;
    for (const auto& m : enumerate(n, 1)) spheres.push_back(zip(m, 0, 1).map);
    for (int s = 1; s <= 3; ++s)
      for (int f = 1; f <= s; ++f) {
        ExactInt total = 0;
        for (const auto& q : spheres) total += count_saws(q, s - f, f);
        sums &= total == count_maps(n, s).value;
      }
  }
  // finite-n ratios #Q_{n,p} / #Q_{n,1} increase towards the annealed means
  bool limits = annealed_saw_mean(1, 1) == ExactRational(20, 3) && annealed_saw_mean(1, 2) == ExactRational(112, 3);
  bool monotone = true;
  std::string trend;
  for (long p : {2L, 3L}) {
    ExactRational prev = 0, lim = annealed_saw_mean(1, p - 1);
    for (long n = p - 1; n <= 4; ++n) {
      ExactRational q(count_maps(n, p).value, count_maps(n, 1).value);
      monotone &= q > prev && q < lim;
      prev = q;
      if (n == 4) trend += "p=" + std::to_string(p) + ": n=4 ratio " + f6(to_double(q)) + " < " + frac(lim) + "; ";
    }
  }
  bool ok = bad == 0 && sums && limits && monotone;
  report(2, ok,
         std::to_string(trips - bad) + "/" + std::to_string(trips) + " round trips; SAW sums " + (sums ? "exact" : "WRONG") +
             "; " + trend + (monotone ? "increasing" : "NOT increasing"),
         "100% identity; sums == #Q_{n,b+f}; means 20/3, 112/3 approached from below");
}

// 3
bool c_peel(const Sizes& S, std::uint64_t seed) {
  auto hp = PeelLaw::half_plane();
  double residual = std::abs(hp.total_mass() - 1);
  bool finite_exact = true;
  for (long p = 1; p <= 12; ++p) {
    ExactRational b = 0, pl = 0;
    for (const auto& a : PeelLaw::boltzmann(p).atoms()) b += a.prob;
    for (const auto& a : PeelLaw::plane(p).atoms()) pl += a.prob;
    finite_exact &= b == 1 && pl == 1;
  }
  // exact left/right symmetry
  auto mirror = [](PeelEvent e) {
    switch (e.tag) {
      case PeelTag::L: e.tag = PeelTag::R; break;
      case PeelTag::R: e.tag = PeelTag::L; break;
      case PeelTag::LL: e.tag = PeelTag::RR; break;
      case PeelTag::RR: e.tag = PeelTag::LL; break;
      case PeelTag::CC: std::swap(e.l1, e.l2); break;
      default: break;
    }
    return e;
  };
  bool symmetric = true;
  std::vector<PeelLaw> laws{hp};
  // finite kernels write every swallow on the right, so only these two are checked
  for (long p : {1L, 2L, 5L, 9L}) laws.push_back(PeelLaw::plane(p));
  for (const auto& law : laws)
    for (const auto& a : law.atoms(24)) symmetric &= law.probability(mirror(a.event)) == a.prob;

  Rng rng = make_rng(seed, 3);
  Moments E, Sw;
  std::vector<std::int64_t> hist(2048, 0);
  for (int i = 0; i < S.peel_steps; ++i) {
    auto a = event_accounting(hp.sample(rng));
    E.add(static_cast<double>(a.exposed));
    std::int64_t s = a.swallowed_left + a.swallowed_right;
    Sw.add(static_cast<double>(s));
    if (s < 2048) ++hist[s];
  }
  bool e_ok = std::abs(E.mean - 2) <= kSigmas * E.se();
  bool s_ok = std::abs(Sw.mean - 1) <= kSigmas * Sw.se();

  // swallowed-length tail, exact law and Monte Carlo, in bins [k, 2k) for k = 8..512
  std::vector<double> pmf(2048, 0.0);
  for (std::int64_t k = 0; k < 2048; ++k) {
    pmf[k] += hp.probability_double({PeelTag::L, k, 0}) + hp.probability_double({PeelTag::R, k, 0});
  }
  for (std::int64_t a = 1; a < 2048; a += 2)
    for (std::int64_t b = 1; a + b < 2048; b += 2) {
      pmf[a + b] += hp.probability_double({PeelTag::LL, a, b}) + hp.probability_double({PeelTag::RR, a, b}) +
                    hp.probability_double({PeelTag::CC, a, b});
    }
  auto bin_sum = [](const auto& v) {
    return [&v](std::int64_t k) {
      double m = 0;
      for (std::int64_t j = k; j < 2 * k; ++j) m += static_cast<double>(v[j]);
      return m;
    };
  };
  auto [xe, ye] = binned(bin_sum(pmf), 8, 1024);
  auto [xm, ym] = binned(bin_sum(hist), 8, 1024);
  double slope_exact = loglog_fit(xe, ye).slope;
  Fit fm = loglog_fit(xm, ym);
  bool tail_ok = std::abs(slope_exact - kSwallowSlope) <= kSwallowTol && std::abs(fm.slope - kSwallowSlope) <= kSwallowTol;

  bool ok = residual <= kMassResidual && finite_exact && symmetric && e_ok && s_ok && tail_ok;
  report(3, ok,
         "mass residual " + f6(residual) + ", finite kernels exact " + (finite_exact ? "yes" : "NO") + ", symmetry " +
             (symmetric ? "exact" : "BROKEN") + ", E[exposed] " + f6(E.mean) + " +- " + f6(E.se()) + ", E[swallowed] " +
             f6(Sw.mean) + " +- " + f6(Sw.se()) + ", tail slope exact " + f6(slope_exact) + " / MC " + f6(fm.slope),
         "residual <= 1e-12, E[exposed] = 2, E[swallowed] = 1 within 3 sigma, slope -2.5 +- 0.2");
  return ok;
}

// 4
void c_ywalk(const Sizes& S, std::uint64_t seed) {
  auto hp = PeelLaw::half_plane();
  Rng rng = make_rng(seed, 4);
  Moments D;
  std::int64_t identity_failures = 0;
  std::set<PeelTag> seen;
  for (std::int64_t i = 0; i < S.ywalk_steps; ++i) {
    PeelEvent e = hp.sample(rng);
    auto a = event_accounting(e);
    if (a.dY != a.exposed - a.swallowed_left - 1) ++identity_failures;
    seen.insert(e.tag);
    D.add(static_cast<double>(a.dY));
  }
  bool cover = seen.size() == 6;  // every tag except Stop
  bool ok = std::abs(D.mean - 0.5) <= kSigmas * D.se() && identity_failures == 0 && cover;
  report(4, ok,
         "E[dY] " + f6(D.mean) + " +- " + f6(D.se()) + " over " + std::to_string(S.ywalk_steps) + " steps; identity failures " +
             std::to_string(identity_failures) + "; tags seen " + std::to_string(seen.size()) + "/6",
         "0.5 within 3 sigma; identity on every event");
}

// 5
void c_tails(const Sizes& S, std::uint64_t seed) {
  std::vector<std::int64_t> grid{10, 20, 50, 100, 200, 500, 1000};
  std::vector<std::int64_t> X;
  Rng rng = make_rng(seed, 5);
  for (int i = 0; i < S.tail_samples; ++i) X.push_back(y_walk(S.tail_walk, rng).infimum);
  auto rows = overshoot_tail(X, grid);
  std::vector<double> x, y;
  std::string table;
  for (const auto& r : rows) {
    table += f6(r.scaled) + " ";
    if (r.p > 0) {
      x.push_back(static_cast<double>(r.n));
      y.push_back(r.scaled);
    }
  }
  Fit trend = loglog_fit(x, y);

  Rng frng = make_rng(seed, 55);
  std::vector<double> maxo;
  for (int i = 0; i < S.fence_samples; ++i) {
    auto f = build_fence(1, frng);
    maxo.push_back(static_cast<double>(std::max(f.left, f.right)));
  }
  std::vector<double> mx, my;
  for (auto n : grid) {
    double c = static_cast<double>(std::count_if(maxo.begin(), maxo.end(), [&](double v) { return v >= static_cast<double>(n); }));
    if (c > 0) {
      mx.push_back(static_cast<double>(n));
      my.push_back(c / static_cast<double>(maxo.size()));
    }
  }
  Fit mfit = loglog_fit(mx, my);
  // the overshoot bound is only an upper bound; report whether the fence tail sits under 2 P(-X >= n/2 - 1)
  bool under = true;
  for (size_t i = 0; i < mx.size(); ++i) {
    double n = mx[i], thr = n / 2 - 1;
    double px = static_cast<double>(std::count_if(X.begin(), X.end(), [&](std::int64_t v) { return -v >= thr; })) /
                static_cast<double>(X.size());
    under &= my[i] <= 2 * px;
  }
  bool ok = trend.slope <= kTrendSlopeMax && std::abs(mfit.slope - kMaxOvershootSlope) <= kMaxOvershootTol;
  report(5, ok,
         "sqrt(n) P(X <= -n) on n=10..1000: " + table + "(log-log slope " + f6(trend.slope) + "); max overshoot tail slope " +
             f6(mfit.slope) + " +- " + f6(mfit.slope_se) + ", below the 2 P(-X >= n/2 - 1) bound: " + (under ? "yes" : "no"),
         "trend slope <= 0.1; tail slope -0.5 +- 0.15");
}

// 6
void c_symmetry(const Sizes& S, std::uint64_t seed) {
  bool ok = true;
  std::string m;
  for (std::int64_t k : {1, 4, 16}) {
    // independent fence streams for the two sides
    Rng a = make_rng(seed, 600 + k), b = make_rng(seed, 700 + k);
    std::vector<double> right, left;
    for (int i = 0; i < S.fence_samples; ++i) right.push_back(static_cast<double>(build_fence(k, a).right));
    for (int i = 0; i < S.fence_samples; ++i) left.push_back(static_cast<double>(build_fence(k, b).left));
    auto ks = ks_two_sample(right, left);
    ok &= ks.p_value > kKsLevel;
    m += "k=" + std::to_string(k) + ": D " + f6(ks.D) + " p " + f6(ks.p_value) + "; ";
  }
  report(6, ok, m, "KS p-value > 0.01 for k in {1, 4, 16}");
}

// 7
void c_boltzmann(const Sizes& S, std::uint64_t seed) {
  bool ok = true;
  std::string m;
  for (long p : {1L, 2L}) {
    auto table = boltzmann_exact_distribution(static_cast<int>(p), 3);
    std::unordered_map<std::string, size_t> index;
    std::vector<double> probs;
    for (size_t i = 0; i < table.atoms.size(); ++i) {
      index[table.atoms[i].code] = i;
      probs.push_back(to_double(table.atoms[i].prob));
    }
    probs.push_back(to_double(ExactRational(1) - table.mass));  // every map with n > 3
    std::vector<double> obs(probs.size(), 0.0);
    Rng rng = make_rng(seed, 70 + static_cast<std::uint64_t>(p));
    std::int64_t unmatched_small = 0;
    for (int i = 0; i < S.boltz_samples; ++i) {
      std::int64_t faces = 0;
      auto mp = sample_boltzmann(p, 1 << 20, rng, &faces);
      if (!mp) {
        obs.back() += 1;  // over budget, certainly n > 3
        continue;
      }
      auto it = index.find(canonical_code(*mp));
      if (it != index.end()) obs[it->second] += 1;
      else {
        if (mp->count_faces(FaceKind::Inner) <= 3) ++unmatched_small;
        obs.back() += 1;
      }
    }
    auto chi = chi_square_gof(obs, probs);
    ok &= chi.p_value > kChiLevel && unmatched_small == 0;
    m += "p=" + std::to_string(p) + ": " + std::to_string(table.atoms.size()) + " maps, chi2 " + f6(chi.stat) + " dof " +
         std::to_string(chi.dof) + " p-value " + f6(chi.p_value) + ", unknown small maps " + std::to_string(unmatched_small) + "; ";
  }
  report(7, ok, m, "chi-square p-value > 0.01 for p in {1, 2}");
}

// 8
void c_nesting(const Sizes& S, std::uint64_t seed) {
  bool ok = true;
  std::string m;
  const std::vector<int> levels{8, 16, 32, 64};
  for (auto v : {FenceVariant::Folded, FenceVariant::Glued}) {
    std::vector<std::vector<double>> ratio(levels.size());
    int truncated = 0;
    Rng rng = make_rng(seed, 80 + static_cast<std::uint64_t>(v));
    for (int i = 0; i < S.nest_reps; ++i) {
      auto lv = iterate_fences(levels.back(), v, rng);
      if (static_cast<int>(lv.size()) < levels.back() || lv.back().truncated) {
        ++truncated;
        continue;
      }
      for (size_t j = 0; j < levels.size(); ++j) {
        double n = levels[j];
        ratio[j].push_back(static_cast<double>(lv[levels[j] - 1].radius) / (n * n));
      }
    }
    std::vector<double> med;
    for (auto& r : ratio) med.push_back(r.empty() ? 0.0 : median(r));
    double lo = *std::min_element(med.begin(), med.end()), hi = *std::max_element(med.begin(), med.end());
    ok &= lo > 0 && hi / lo <= kNestingFactor;
    m += std::string(v == FenceVariant::Folded ? "folded" : "glued") + ": medians";
    for (double x : med) m += " " + f6(x);
    m += " (max/min " + f6(lo > 0 ? hi / lo : INFINITY) + ", truncated " + std::to_string(truncated) + "); ";
  }
  report(8, ok, m, "median r(n)/n^2 within a factor 3 over n in {8,16,32,64}");
}

// 9
void c_diffusivity(const Sizes& S, std::uint64_t seed, const fs::path& out) {
  bool ok = true;
  std::string m;
  const std::vector<std::int64_t> grid{16, 32, 64, 128, 256, 512, 1024};
  for (auto v : {FenceVariant::Folded, FenceVariant::Glued}) {
    auto res = displacement_experiment(v, grid, S.disp_reps, seed, S.budget);
    std::string name = v == FenceVariant::Folded ? "folded" : "glued";
    std::ofstream csv(out / ("displacement_" + name + ".csv"));
    csv << "n,samples,censored,median_lo,median_hi,median_exact\n";
    bool exact = true;
    for (const auto& p : res.points) {
      csv << p.n << "," << p.samples << "," << p.censored << "," << p.median_lo << "," << p.median_hi << ","
          << p.median_exact << "\n";
      exact &= p.median_exact;
    }
    // with censored medians the slope is only bracketed; both ends must lie in the window
    bool in = std::abs(res.slope_lo.slope - kDiffSlope) <= kDiffTol && std::abs(res.slope_hi.slope - kDiffSlope) <= kDiffTol;
    ok &= in && res.monotonicity_violations == 0;
    m += name + ": slope " + f6(res.slope_lo.slope) + (exact ? "" : " .. " + f6(res.slope_hi.slope)) + " +- " +
         f6(res.slope_lo.slope_se) + (exact ? " (medians exact)" : " (some medians censored)") + ", medians";
    for (const auto& p : res.points) m += " " + f6(p.median_lo);
    m += "; ";
  }
  report(9, ok, m, "slope 0.5 +- 0.1 for folded and glued");
}

// 10, 11
void c_volume(const Sizes& S, std::uint64_t seed, const fs::path& out) {
  bool ok = true;
  std::string m;
  const std::vector<int> grid{4, 8, 16, 32};
  std::map<Lattice, VolumeResult> res;
  for (auto lat : {Lattice::UIHPQ, Lattice::UIPQ, Lattice::Folded, Lattice::Glued}) {
    res[lat] = volume_experiment(lat, grid, S.vol_reps, seed, S.vol_budget);
    const auto& r = res[lat];
    std::ofstream csv(out / ("volume_" + lattice_name(lat) + ".csv"));
    csv << "r,samples,censored,mean_ball,se_ball,mean_inner,se_inner\n";
    for (const auto& p : r.points)
      csv << p.r << "," << p.samples << "," << p.censored << "," << fmt(p.ball.mean) << "," << fmt(p.ball.se) << ","
          << fmt(p.inner.mean) << "," << fmt(p.inner.se) << "\n";
    ok &= std::abs(r.slope.slope - kVolSlope) <= kVolTol;
    m += lattice_name(lat) + " " + f6(r.slope.slope) + " +- " + f6(r.slope.slope_se) + "; ";
  }
  report(10, ok, "log-log slopes over r=4..32: " + m, "4.0 +- 0.5 on each lattice");

  const auto& a = res[Lattice::UIPQ].points;
  const auto& b = res[Lattice::UIHPQ].points;
  std::string rm;
  double last = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    last = a[i].ball.mean / b[i].ball.mean;
    rm += "r=" + std::to_string(a[i].r) + ": " + f6(last) + " ";
  }
  report(11, last >= kRatioLo && last <= kRatioHi, "mean #B_r(uipq)/mean #B_r(uihpq) " + rm + "(reference 9/7 = 1.285714)",
         "ratio at the largest r in [0.9, 1.7]", false);
}

// 12
void c_singularity(const Sizes& S, std::uint64_t seed) {
  const std::vector<int> grid{2, 4, 8, 16};
  std::vector<double> alphas{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0};
  auto sr = singularity_experiment(grid, alphas, S.sing_reps, seed, S.budget);
  auto cr = covariance_scan(grid, S.cov_reps, seed, S.budget);
  bool dom = sr.dominance_checked > 0 && sr.dominance_failures == 0;
  bool cov_ok = true;
  std::string cm;
  for (size_t i = 0; i < cr.grid.size(); ++i)
    for (size_t j = 0; j < cr.grid.size(); ++j)
      if (cr.grid[j] >= 4 * cr.grid[i]) {
        bool below = std::abs(cr.cov_y[i][j]) < kCovSe * cr.se_y[i][j];
        cov_ok &= below;
        cm += "(" + std::to_string(cr.grid[i]) + "," + std::to_string(cr.grid[j]) + ") " + f6(cr.cov_y[i][j]) + " vs se " +
              f6(cr.se_y[i][j]) + "; ";
      }
  bool ok = dom && sr.separated_alpha_found && cov_ok;
  report(12, ok,
         "dominance " + std::to_string(sr.dominance_checked - sr.dominance_failures) + "/" + std::to_string(sr.dominance_checked) +
             "; separated alpha at r=" + std::to_string(sr.largest_r) + ": " +
             (sr.separated_alpha_found ? f6(sr.best_alpha) : std::string("none")) + "; Cov(Y_r,Y_s): " + cm,
         "100% dominance; some alpha with disjoint 95% CIs; |Cov| < 2 SE for s/r >= 4");
}

// 13
void c_reproducible(std::uint64_t seed, const fs::path& out) {
  std::vector<std::pair<std::string, Json>> runs{
      {"enum", Json{{"n", 3}, {"p", 2}}},
      {"oracle", Json{{"action", "verify"}, {"n_max", 3}, {"p_max", 2}}},
      {"oracle", Json{{"action", "enumerate"}, {"n", 2}, {"p", 2}}},
      {"peel", Json{{"action", "law"}, {"regime", "boltzmann"}, {"p", 3}}},
      {"peel", Json{{"action", "sample"}, {"steps", 2000}, {"seed", seed}}},
      {"fence", Json{{"k", 4}, {"samples", 200}, {"seed", seed}}},
      {"fence", Json{{"k", 2}, {"samples", 50}, {"mode", "geometric"}, {"seed", seed}}},
      {"ywalk", Json{{"steps", 20000}, {"samples", 5}, {"seed", seed}}},
      {"fences", Json{{"n", 8}, {"variant", "glued"}, {"samples", 10}, {"seed", seed}}},
      {"explore", Json{{"lattice", "folded"}, {"r", 6}, {"seed", seed}}},
      {"experiment", Json{{"kind", "displacement"}, {"grid", {4, 8, 16}}, {"reps", 4}, {"seed", seed}}},
      {"experiment", Json{{"kind", "volume"}, {"lattice", "glued"}, {"grid", {2, 4, 8}}, {"reps", 4}, {"seed", seed}}},
      {"experiment", Json{{"kind", "singularity"}, {"grid", {2, 4}}, {"reps", 6}, {"seed", seed}}},
      {"experiment", Json{{"kind", "covariance"}, {"grid", {2, 4}}, {"reps", 6}, {"pilot", 6}, {"seed", seed}}},
  };
  int files = 0, diffs = 0;
  std::string first_diff;
  for (size_t i = 0; i < runs.size(); ++i) {
    fs::path a = out / "repro" / (std::to_string(i) + "a"), b = out / "repro" / (std::to_string(i) + "b");
    fs::remove_all(a);
    fs::remove_all(b);
    run_command(runs[i].first, runs[i].second, a.string());
    run_command(runs[i].first, runs[i].second, b.string());
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      std::ifstream fa(e.path(), std::ios::binary), fb(b / e.path().filename(), std::ios::binary);
      std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
      if (sa != sb || sa.empty()) {
        ++diffs;
        if (first_diff.empty()) first_diff = e.path().string();
      }
    }
  }
  report(13, diffs == 0 && files > 0,
         std::to_string(files - diffs) + "/" + std::to_string(files) + " artifacts byte-identical across " +
             std::to_string(runs.size()) + " command reruns" + (first_diff.empty() ? "" : ", first difference " + first_diff),
         "byte-identical CSV/JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance_out";
  std::uint64_t seed = 20240601;
  bool quick = false;
  std::vector<int> only;
  app.add_option("--out", out);
  app.add_option("--seed", seed);
  app.add_flag("--quick", quick, "reduced sample sizes, for development");
  app.add_option("--only", only)->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  Sizes S = quick ? quick_sizes() : Sizes{};
  fs::create_directories(out);
  std::set<int> want(only.begin(), only.end());
  auto on = [&](int id) { return want.empty() || want.count(id); };
  std::printf("acceptance: seed %llu%s\n", static_cast<unsigned long long>(seed), quick ? " (quick sizes)" : "");

  auto timed = [&](int id, const std::function<void()>& f) {
    if (!on(id)) return;
    auto t0 = std::chrono::steady_clock::now();
    f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("              (%.1f s)\n", s);
    std::fflush(stdout);
  };

  timed(1, c_counts);
  timed(2, c_zipper);
  bool gate = true;
  if (on(3)) timed(3, [&] { gate = c_peel(S, seed); });
  if (!gate) {
    std::printf("peeling law gate failed; downstream experiments not run\n");
    for (int id = 4; id <= 13; ++id)
      if (on(id)) report(id, false, "not run (criterion 3 failed)", "-");
  } else {
    timed(4, [&] { c_ywalk(S, seed); });
    timed(5, [&] { c_tails(S, seed); });
    timed(6, [&] { c_symmetry(S, seed); });
    timed(7, [&] { c_boltzmann(S, seed); });
    timed(8, [&] { c_nesting(S, seed); });
    timed(9, [&] { c_diffusivity(S, seed, out); });
    if (on(10) || on(11)) timed(10, [&] { c_volume(S, seed, out); });
    timed(12, [&] { c_singularity(S, seed); });
    timed(13, [&] { c_reproducible(seed, out); });
  }

  int failed = 0, passed = 0;
  std::ofstream rep(fs::path(out) / "acceptance.csv");
  rep << "criterion,verdict,gating,measured,target\n";
  for (const auto& v : g_verdicts) {
    if (v.gating) (v.pass ? passed : failed)++;
    auto q = [](std::string s) {
      std::string o = "\"";
      for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
      return o + "\"";
    };
    rep << v.id << "," << (v.pass ? "PASS" : "FAIL") << "," << v.gating << "," << q(v.measured) << "," << q(v.target) << "\n";
  }
  std::printf("acceptance complete: %d gating criteria passed, %d failed\n", passed, failed);
  return failed == 0 ? 0 : 1;
}
