#pragma once

// Test-side canonical form for symbols: multiply by a common |xi|^(2K) so
// every power of |xi| is non-negative, then expand |xi|^2 = sum_a xi_a^2.
// Two symbols are equal iff their expansions agree.

#include "ncwres/symcalc.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ncwres::testing {

using Expanded = std::map<std::pair<int, MultiIndex>, NCPoly>;

inline void expand_norm_power(int d, int axis, int left, Rational coef, MultiIndex alpha, const NCPoly& c, int degree,
                              Expanded& out) {
  if (axis == d - 1) {
    alpha[axis] = static_cast<std::uint8_t>(alpha[axis] + 2 * left);
    // multinomial: divide by left! for the last slot
    for (int i = 2; i <= left; ++i) coef /= i;
    auto& slot = out[{degree, alpha}];
    slot += coef * c;
    if (slot.is_zero()) out.erase({degree, alpha});
    return;
  }
  Rational fact = 1;
  for (int k = 0; k <= left; ++k) {
    if (k > 0) fact *= k;
    MultiIndex a = alpha;
    a[axis] = static_cast<std::uint8_t>(a[axis] + 2 * k);
    expand_norm_power(d, axis + 1, left - k, coef / fact, a, c, degree, out);
  }
}

inline int min_norm_power(const Symbol& s) {
  int m = 0;
  for (const auto& [deg, comp] : s.components()) {
    for (const auto& [xi, c] : comp) m = std::min(m, xi.m);
  }
  return m;
}

inline Expanded expand_symbol(const Symbol& s, int shift) {
  Expanded out;
  for (const auto& [deg, comp] : s.components()) {
    for (const auto& [xi, c] : comp) {
      const int n = xi.m + shift;
      Rational nfact = 1;
      for (int i = 2; i <= n; ++i) nfact *= i;
      expand_norm_power(s.dim(), 0, n, nfact, xi.alpha, c, deg, out);
    }
  }
  return out;
}

inline bool same_symbol(const Symbol& a, const Symbol& b) {
  const int shift = -std::min(min_norm_power(a), min_norm_power(b));
  return a.dim() == b.dim() && expand_symbol(a, shift) == expand_symbol(b, shift);
}

}  // namespace ncwres::testing
