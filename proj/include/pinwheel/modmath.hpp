#pragma once

#include "pinwheel/numbers.hpp"

namespace pinwheel {

// sum_{i=0}^{n-1} floor((a + b*i) / m), m > 0, any sign a/b, n >= 0.
Int floor_sum(const Int& n, const Int& a, const Int& b, const Int& m);

// #{ t in [0,T) : (c + t*d) mod m in [0, x) }, m > 0, 0 <= x <= m.
Int ap_count_below(const Int& T, const Int& c, const Int& d, const Int& m, const Int& x);

inline bool ap_hits_below(const Int& T, const Int& c, const Int& d, const Int& m, const Int& x) {
  return ap_count_below(T, c, d, m, x) > 0;
}

}  // namespace pinwheel
