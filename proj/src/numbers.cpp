#include "pinwheel/numbers.hpp"

namespace pinwheel {

Int mod_inverse(const Int& a, const Int& m) {
  // extended euclid on (a mod m, m)
  Int old_r = mod_floor(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  return mod_floor(old_s, m);
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

Int checked_pow(const Int& a, unsigned long e, unsigned long max_bits) {
  if (a == 0) return e == 0 ? Int(1) : Int(0);
  Int base = a, result = 1;
  unsigned long exp = e;
  while (exp > 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
    if (msb(result) > max_bits || (exp > 0 && msb(base) > max_bits))
      throw std::overflow_error("checked_pow: result exceeds bit budget");
  }
  return result;
}

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(Int(text));
  Int p(text.substr(0, slash));
  Int q(text.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("rational with zero denominator: " + text);
  return Rat(p, q);
}

std::string format_rational(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

}  // namespace pinwheel
