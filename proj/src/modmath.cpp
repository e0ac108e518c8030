#include "pinwheel/modmath.hpp"

namespace pinwheel {

Int floor_sum(const Int& n, const Int& a, const Int& b, const Int& m) {
  if (m <= 0) throw std::domain_error("floor_sum: modulus must be positive");
  if (n <= 0) return 0;
  Int ans = 0;
  Int aa = a, bb = b;
  if (aa < 0 || aa >= m) {
    Int q = floor_div(aa, m);
    ans += n * q;
    aa -= q * m;
  }
  if (bb < 0 || bb >= m) {
    Int q = floor_div(bb, m);
    ans += (n * (n - 1) / 2) * q;
    bb -= q * m;
  }
  // now 0 <= aa < m, 0 <= bb < m
  if (bb == 0) return ans;
  Int top = aa + bb * (n - 1);
  Int j_max = top / m;
  if (j_max == 0) return ans;
  // sum_{i<n} floor((aa+bb*i)/m) = n*J - sum_{j<J} floor(((m-aa+bb-1) + m*j)/bb)
  ans += n * j_max - floor_sum(j_max, m - aa + bb - 1, m, bb);
  return ans;
}

Int ap_count_below(const Int& T, const Int& c, const Int& d, const Int& m, const Int& x) {
  if (m <= 0) throw std::domain_error("ap_count_below: modulus must be positive");
  if (T <= 0 || x <= 0) return 0;
  if (x >= m) return T;
  // [y mod m < x] = floor(y/m) - floor((y-x)/m) for 0 < x <= m
  return floor_sum(T, c, d, m) - floor_sum(T, c - x, d, m);
}

}  // namespace pinwheel
