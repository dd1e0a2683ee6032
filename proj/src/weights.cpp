#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "enumeration.hpp"

namespace qm {

namespace {

constexpr std::int64_t kTable = 1 << 19;

}  // namespace

ExactRational z_exact(long q) { return partition_function(q) * rpow(ExactRational(2, 9), q); }

ExactRational h_exact(long q) {
  return ExactRational(factorial(3 * q), factorial(q) * factorial(2 * q - 1)) * rpow(ExactRational(4, 27), q);
}

double log_z(std::int64_t q) {
  if (q == 1) return std::log(8.0 / 27.0);
  double x = static_cast<double>(q);
  return std::log(2.0) + x * std::log(4.0 / 27.0) + std::lgamma(3 * x - 2) - std::lgamma(x + 1) - std::lgamma(2 * x);
}

double z_value(std::int64_t q) {
  if (q < 1) return 0.0;
  const auto& law = ZLaw::instance();
  if (q < static_cast<std::int64_t>(law.z_.size())) return law.z_[q];
  return std::exp(log_z(q));
}

double h_value(std::int64_t q) {
  double x = static_cast<double>(q);
  return std::exp(std::lgamma(3 * x + 1) - std::lgamma(x + 1) - std::lgamma(2 * x) + x * std::log(4.0 / 27.0));
}

const ZLaw& ZLaw::instance() {
  static const ZLaw law;
  return law;
}

ZLaw::ZLaw() {
  z_.assign(kTable + 1, 0.0);
  z_[1] = 8.0 / 27.0;
  z_[2] = 16.0 / 729.0;
  for (std::int64_t q = 2; q < kTable; ++q) {
    double x = static_cast<double>(q);
    z_[q + 1] = z_[q] * (4.0 / 27.0) * (3 * x) * (3 * x - 1) * (3 * x - 2) / ((x + 1) * (2 * x + 1) * (2 * x));
  }
  cdf_.assign(kTable + 1, 0.0);
  // summed from the small atoms upward; the tail mass is recovered from the asymptotics
  long double acc = 0;
  for (std::int64_t q = 1; q <= kTable; ++q) {
    acc += 3.0L * z_[q];
    cdf_[q] = static_cast<double>(acc);
  }
  double Q1 = static_cast<double>(kTable + 1);
  double c = std::exp(log_z(kTable + 1)) * std::pow(Q1, 2.5) / kZTailConst;
  envelope_ = kZTailConst * c * std::pow(1.0 + 1.0 / Q1, 2.5) / (1.5 * std::pow(Q1, 1.5));
}

std::int64_t ZLaw::sample(Rng& rng) const {
  double u = rng.uniform();
  if (u < cdf_[1]) return 1;
  if (u >= cdf_.back()) return sample_tail(rng);
  auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  return static_cast<std::int64_t>(it - cdf_.begin());
}

std::int64_t ZLaw::sample_tail(Rng& rng) const {
  const double Q1 = static_cast<double>(kTable + 1);
  for (;;) {
    double x = Q1 * std::pow(rng.uniform_open(), -1.0 / 1.5);
    if (x > 9.0e18) continue;
    auto q = static_cast<std::int64_t>(std::floor(x));
    double qd = static_cast<double>(q);
    double pq = std::pow(Q1 / qd, 1.5) * -std::expm1(1.5 * std::log1p(-1.0 / (qd + 1)));
    double accept = std::exp(log_z(q)) / (envelope_ * pq);
    if (rng.uniform() < accept) return q;
  }
}

}  // namespace qm
