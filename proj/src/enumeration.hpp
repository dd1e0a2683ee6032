#pragma once

#include <vector>

#include "exact.hpp"

namespace qm {

// #Q_{n,p}: rooted quadrangulations with n inner faces and a simple boundary of length 2p.
struct CountResult {
  ExactInt value;
  bool flagged_zero = false;  // n < p - 1, outside the formula's domain
};

CountResult count_maps(long n, long p);
ExactRational partition_function(long p);  // Z(p)
ExactRational tutte_coefficient(long p);   // r_p, with C_p = r_p / sqrt(pi)
ExactRational annealed_saw_mean(long b, long f);

struct GrowthRow {
  long p = 0, n = 0;
  double count_ratio = 0;  // #Q_{n+1,p} / #Q_{n,p}
  double z_ratio = 0;      // Z(p+1) / Z(p)
  double c_ratio = 0;      // C_{p+1} / C_p
};
std::vector<GrowthRow> growth_ratio_report(long p_max, long n_max);

}  // namespace qm
