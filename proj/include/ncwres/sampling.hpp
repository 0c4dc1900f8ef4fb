#pragma once

// Seeded random polynomials and symbols for property checks.

#include "ncwres/symcalc.hpp"

#include <cstdint>

namespace ncwres {

struct RandomSymbolOptions {
  int top_degree = 0;
  /// Components at top_degree, top_degree - 1, ..., top_degree - depth + 1.
  int depth = 2;
  int terms_per_degree = 2;
  int words_per_coefficient = 2;
  int max_word_length = 2;
  bool torsion = true;
  bool include_x = true;
};

/// Letters drawn from h, h^-1, T_a, X and first derivatives of h.
NCPoly random_poly(int d, std::uint64_t seed, int words, int max_length, bool torsion, bool include_x);
Symbol random_symbol(int d, std::uint64_t seed, const RandomSymbolOptions& opts = {});

}  // namespace ncwres
