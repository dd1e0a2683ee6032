#include "exact.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qm {

ExactInt factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative number");
  static std::mutex mu;
  static std::vector<ExactInt> cache{1};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<long>(cache.size()));
  return cache[n];
}

ExactInt ipow(const ExactInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

ExactRational rpow(const ExactRational& base, long e) {
  ExactRational r = 1;
  ExactRational b = e < 0 ? ExactRational(1) / base : base;
  for (long k = std::labs(e); k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

// convert_to<double> on huge numerators overflows; scale by bit length first
double to_double(const ExactRational& q) {
  ExactInt n = numer(q), d = denom(q);
  if (n == 0) return 0.0;
  long sn = static_cast<long>(msb(abs(n))), sd = static_cast<long>(msb(d));
  long shift_n = std::max(0L, sn - 900), shift_d = std::max(0L, sd - 900);
  double a = (n >> shift_n).convert_to<double>();
  double b = (d >> shift_d).convert_to<double>();
  return std::ldexp(a / b, static_cast<int>(shift_n - shift_d));
}

double to_double(const ExactInt& n) { return to_double(ExactRational(n)); }

std::string to_string(const ExactInt& n) { return n.str(); }

std::string to_string(const ExactRational& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

}  // namespace qm
