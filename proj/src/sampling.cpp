#include "ncwres/sampling.hpp"

#include <random>
#include <vector>

namespace ncwres {

namespace {

Letter random_letter(int d, std::mt19937_64& rng, bool torsion, bool include_x) {
  std::vector<Letter> pool{Letter::h(), Letter::hinv()};
  for (int a = 1; a <= d; ++a) pool.push_back(derived(Letter::h(), a));
  if (torsion) {
    for (int a = 1; a <= d; ++a) pool.push_back(Letter::t(a));
  }
  if (include_x) pool.push_back(Letter::x());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

}  // namespace

NCPoly random_poly(int d, std::uint64_t seed, int words, int max_length, bool torsion, bool include_x) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, max_length);
  std::uniform_int_distribution<int> coef(-3, 3);
  NCPoly p;
  for (int i = 0; i < words; ++i) {
    Word w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) w.push_back(random_letter(d, rng, torsion, include_x));
    int c = coef(rng);
    if (c == 0) c = 1;
    p.add_term(std::move(w), Rational(c));
  }
  return p;
}

Symbol random_symbol(int d, std::uint64_t seed, const RandomSymbolOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> axis(0, d - 1);
  std::uniform_int_distribution<int> alpha_size(0, 2);
  Symbol s(d);
  for (int level = 0; level < opts.depth; ++level) {
    const int degree = opts.top_degree - level;
    for (int t = 0; t < opts.terms_per_degree; ++t) {
      XiMonomial xi;
      // |alpha| has the parity of the degree so that m is an integer
      int size = alpha_size(rng);
      if ((size - degree) % 2 != 0) ++size;
      for (int k = 0; k < size; ++k) ++xi.alpha[axis(rng)];
      xi.m = (degree - size) / 2;
      s.add_term(random_poly(d, rng(), opts.words_per_coefficient, opts.max_word_length, opts.torsion, opts.include_x),
                 xi);
    }
  }
  return s;
}

}  // namespace ncwres
