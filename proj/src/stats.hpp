#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace qm {

struct Fit {
  double slope = 0, intercept = 0, slope_se = 0;
  int n = 0;
};
Fit ols(const std::vector<double>& x, const std::vector<double>& y);
Fit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct MeanSe {
  double mean = 0, se = 0, sd = 0;
  std::int64_t n = 0;
};
MeanSe mean_se(const std::vector<double>& x);

// Streaming mean and variance (Welford).
struct Moments {
  std::int64_t n = 0;
  double mean = 0, m2 = 0;
  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double var() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double se() const;
};

double quantile(std::vector<double> x, double q);  // type-7 interpolation
double median(std::vector<double> x);

struct Interval {
  double lo = 0, hi = 0;
};
Interval wilson(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

// Asymptotic Kolmogorov distribution with the Stephens small-sample correction.
double kolmogorov_q(double lambda);
struct KsResult {
  double D = 0, p_value = 1;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct ChiSquare {
  double stat = 0, p_value = 1;
  int dof = 0;
};
// Bins with expected count below min_expected are pooled into one.
ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs, double min_expected = 5);

double covariance(const std::vector<double>& x, const std::vector<double>& y);
// Bootstrap standard error of the covariance.
double bootstrap_cov_se(const std::vector<double>& x, const std::vector<double>& y, int B, Rng& rng);

}  // namespace qm
