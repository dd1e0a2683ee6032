#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qm {

Fit ols(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  f.n = static_cast<int>(x.size());
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ols needs two or more paired points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (f.n > 2) {
    double rss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / (f.n - 2) / sxx);
  }
  return f;
}

Fit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0 && y[i] > 0) lx.push_back(std::log(x[i])), ly.push_back(std::log(y[i]));
  return ols(lx, ly);
}

double Moments::se() const { return n > 1 ? std::sqrt(var() / static_cast<double>(n)) : 0.0; }

MeanSe mean_se(const std::vector<double>& x) {
  Moments m;
  for (double v : x) m.add(v);
  return {m.mean, m.se(), std::sqrt(m.var()), m.n};
}

double quantile(std::vector<double> x, double q) {
  if (x.empty()) return std::nan("");
  std::sort(x.begin(), x.end());
  double h = (static_cast<double>(x.size()) - 1) * q;
  auto lo = static_cast<size_t>(std::floor(h));
  size_t hi = std::min(lo + 1, x.size() - 1);
  if (std::isinf(x[lo])) return x[lo];
  if (std::isinf(x[hi])) return h == static_cast<double>(lo) ? x[lo] : x[hi];
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

Interval wilson(std::int64_t k, std::int64_t n, double z) {
  if (n == 0) return {0, 1};
  double p = static_cast<double>(k) / static_cast<double>(n), nn = static_cast<double>(n);
  double denom = 1 + z * z / nn;
  double centre = (p + z * z / (2 * nn)) / denom;
  double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double s = 0;
  for (int j = 1; j <= 100; ++j) {
    double t = 2 * std::exp(-2.0 * j * j * lambda * lambda);
    s += (j % 2 ? t : -t);
    if (t < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size()), D = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    D = std::max(D, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  return {D, kolmogorov_q((ne + 0.12 + 0.11 / ne) * D)};
}

ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs, double min_expected) {
  if (observed.size() != probs.size()) throw std::invalid_argument("chi-square: size mismatch");
  double n = 0;
  for (double o : observed) n += o;
  double pool_o = 0, pool_e = 0, stat = 0;
  int bins = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double e = probs[i] * n;
    if (e < min_expected) {
      pool_o += observed[i];
      pool_e += e;
      continue;
    }
    stat += (observed[i] - e) * (observed[i] - e) / e;
    ++bins;
  }
  if (pool_e > 0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++bins;
  }
  ChiSquare r;
  r.stat = stat;
  r.dof = bins - 1;
  if (r.dof < 1) return r;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return r;
}

double covariance(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = x.size();
  if (n < 2 || y.size() != n) return 0;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double s = 0;
  for (size_t i = 0; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(n - 1);
}

double bootstrap_cov_se(const std::vector<double>& x, const std::vector<double>& y, int B, Rng& rng) {
  size_t n = x.size();
  if (n < 2) return 0;
  Moments m;
  std::vector<double> bx(n), by(n);
  for (int b = 0; b < B; ++b) {
    for (size_t i = 0; i < n; ++i) {
      auto k = static_cast<size_t>(rng.below(n));
      bx[i] = x[k];
      by[i] = y[k];
    }
    m.add(covariance(bx, by));
  }
  return std::sqrt(m.var());
}

}  // namespace qm
