#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lbs {

// Exact rational scalar used throughout. All optimization and verification
// arithmetic is exact; doubles appear only in sampling probabilities and
// reported statistics.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "p/q", or a plain decimal like "1.5" into an exact rational.
Rat parse_rat(const std::string& text);

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// ceil(a/b) for nonnegative integers, b >= 1.
inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace lbs
