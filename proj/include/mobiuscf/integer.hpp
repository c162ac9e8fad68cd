#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace mcf {

using Integer = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

inline bool is_even(const Integer& a) { return (a & 1) == 0; }
inline bool is_odd(const Integer& a) { return (a & 1) != 0; }

// cpp_int division truncates toward zero; floors are needed throughout.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Integer binomial(const Integer& n, const Integer& k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (Integer i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace mcf
