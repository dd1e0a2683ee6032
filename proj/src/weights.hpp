#pragma once

#include <cstdint>
#include <vector>

#include "exact.hpp"
#include "rng.hpp"

namespace qm {

// z(q) = Z(q) (2/9)^q: enclosed-region weights of the half-plane law, sum 1/3.
// h(q) = (3q)!/(q!(2q-1)!) (4/27)^q: proportional to C_q (2/9)^q, the infinite-part weight in the plane.
ExactRational z_exact(long q);
ExactRational h_exact(long q);
double z_value(std::int64_t q);
double log_z(std::int64_t q);
double h_value(std::int64_t q);

// Asymptotic constant: z(q) ~ A q^{-5/2}.
constexpr double kZTailConst = 0.0723855573189511;  // 2 / (9 sqrt(3 pi))
// z(q) q^{5/2} / A = 1 + a1/q + a2/q^2 + ...
constexpr double kZTailA1 = 65.0 / 72.0;
constexpr double kZTailA2 = 0.68528;

// Sampler for the law P(q) = 3 z(q), q >= 1. Atoms tabulated to mass 1 - 4e-10,
// the remaining tail drawn exactly by rejection from a Pareto(3/2) envelope.
class ZLaw {
 public:
  static const ZLaw& instance();
  std::int64_t sample(Rng& rng) const;
  std::int64_t table_size() const { return static_cast<std::int64_t>(cdf_.size()) - 1; }
  double tail_mass() const { return 1.0 - cdf_.back(); }
  // conditional law beyond the table
  std::int64_t sample_tail(Rng& rng) const;

 private:
  ZLaw();
  std::vector<double> z_;    // z_[q], q <= Q
  std::vector<double> cdf_;  // cdf_[q] = sum_{j <= q} 3 z(j)
  double envelope_ = 0;
  friend double z_value(std::int64_t q);
};

}  // namespace qm
