#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace pinwheel {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor(a/b), b > 0
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return floor_div(a + b - 1, b); }

// canonical representative in [0, m)
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int ifloor(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int iceil(const Rat& q) { return ceil_div(num(q), den(q)); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

Int mod_inverse(const Int& a, const Int& m);  // requires gcd(a, m) == 1

Int isqrt(const Int& n);

// a^e with a guard on the result size; throws std::overflow_error past max_bits
Int checked_pow(const Int& a, unsigned long e, unsigned long max_bits = 1u << 24);

Rat parse_rational(const std::string& text);  // "p" or "p/q"
std::string format_rational(const Rat& q);    // "p" or "p/q", lowest terms

}  // namespace pinwheel
