#include "enumeration.hpp"

#include <stdexcept>

namespace qm {

namespace {

// (3p)! / (p! (2p-1)!)
ExactRational boundary_factor(long p) {
  return ExactRational(factorial(3 * p), factorial(p) * factorial(2 * p - 1));
}

}  // namespace

CountResult count_maps(long n, long p) {
  if (p < 1 || n < 0) throw std::domain_error("count_maps needs n >= 0, p >= 1");
  if (n < p - 1) return {ExactInt(0), true};
  ExactRational v = boundary_factor(p) / ExactRational(ipow(3, static_cast<unsigned>(p)));
  v *= ipow(3, static_cast<unsigned>(n));
  v *= ExactRational(factorial(2 * n + p - 1), factorial(n - p + 1) * factorial(n + 2 * p));
  if (denom(v) != 1) throw std::logic_error("count_maps produced a non-integer");
  return {numer(v), false};
}

ExactRational partition_function(long p) {
  if (p < 1) throw std::domain_error("partition_function needs p >= 1");
  if (p == 1) return ExactRational(4, 3);
  return 2 * rpow(ExactRational(2, 3), p) *
         ExactRational(factorial(3 * p - 3), factorial(p) * factorial(2 * p - 1));
}

ExactRational tutte_coefficient(long p) {
  if (p < 1) throw std::domain_error("tutte_coefficient needs p >= 1");
  return boundary_factor(p) * rpow(ExactRational(2, 3), p) / 2;
}

ExactRational annealed_saw_mean(long b, long f) {
  if (b < 0 || f < 1) throw std::domain_error("annealed_saw_mean needs b >= 0, f >= 1");
  return tutte_coefficient(b + f) / tutte_coefficient(1);
}

std::vector<GrowthRow> growth_ratio_report(long p_max, long n_max) {
  if (p_max < 2 || n_max < 2) throw std::domain_error("growth_ratio_report needs p_max, n_max >= 2");
  std::vector<GrowthRow> rows;
  for (long p = 1; p <= p_max; ++p) {
    double zr = to_double(partition_function(p + 1) / partition_function(p));
    double cr = to_double(tutte_coefficient(p + 1) / tutte_coefficient(p));
    for (long n = std::max(0L, p - 1); n <= n_max; ++n) {
      GrowthRow r;
      r.p = p;
      r.n = n;
      ExactInt a = count_maps(n, p).value, b = count_maps(n + 1, p).value;
      r.count_ratio = a == 0 ? 0.0 : to_double(ExactRational(b, a));
      r.z_ratio = zr;
      r.c_ratio = cr;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace qm
