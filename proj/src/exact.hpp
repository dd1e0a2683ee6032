#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qm {

using ExactInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

ExactInt factorial(long n);
ExactInt ipow(const ExactInt& base, unsigned e);
ExactRational rpow(const ExactRational& base, long e);

double to_double(const ExactRational& q);
double to_double(const ExactInt& n);
std::string to_string(const ExactInt& n);
std::string to_string(const ExactRational& q);  // "num/den", or "num" when den = 1

inline ExactInt numer(const ExactRational& q) { return boost::multiprecision::numerator(q); }
inline ExactInt denom(const ExactRational& q) { return boost::multiprecision::denominator(q); }

}  // namespace qm
