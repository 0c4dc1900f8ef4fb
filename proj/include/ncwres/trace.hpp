#pragma once

// Formal trace expressions t(word) modulo cyclicity and t(delta_a(.)) = 0.

#include "ncwres/ncalg.hpp"
#include "ncwres/scalar.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ncwres {

/// Cyclic unit cancellation followed by the lexicographically minimal
/// rotation under the global letter order.
Word cyclic_normal_form(Word w);

struct TraceKey {
  int pi_power = 0;
  Word word;
  auto operator<=>(const TraceKey&) const = default;
};

/// Linear combination of t(word) with coefficients q * pi^k.  Words are kept
/// in cyclic normal form; terms with distinct pi powers never merge.
class TraceExpression {
 public:
  using Terms = std::map<TraceKey, Rational>;

  TraceExpression() = default;

  /// t(p) * factor.
  static TraceExpression trace_of(const NCPoly& p, const Scalar& factor = Scalar(1));
  static TraceExpression trace_of(const Word& w, const Scalar& factor = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int max_order() const;

  /// Canonicalizes the word cyclically before merging.
  void add(const Word& w, const Scalar& s);
  /// Inserts without touching the word (used for commutative forms).
  void add_canonical(const TraceKey& key, const Rational& q);

  TraceExpression& operator+=(const TraceExpression& o);
  TraceExpression& operator-=(const TraceExpression& o);
  TraceExpression& operator*=(const Scalar& s);

  friend TraceExpression operator+(TraceExpression a, const TraceExpression& b) { return a += b; }
  friend TraceExpression operator-(TraceExpression a, const TraceExpression& b) { return a -= b; }
  friend TraceExpression operator*(const Scalar& s, TraceExpression a) { return a *= s; }
  friend bool operator==(const TraceExpression&, const TraceExpression&) = default;

 private:
  Terms terms_;
};

TraceExpression cyclic_canonicalize(const std::vector<std::pair<Scalar, Word>>& raw);

enum class TraceMode { Noncommutative, Commutative };

/// Canonical representative modulo cyclicity and integration by parts.
/// Relations t(delta_a(w)) = 0 are generated for all words w in the graded
/// piece of each term, up to one letter longer than the longest term there,
/// and eliminated exactly with the most complex words as pivots.
TraceExpression ibp_reduce(const TraceExpression& e, TraceMode mode = TraceMode::Noncommutative);
/// As above; throws std::invalid_argument if a term exceeds max_order.
TraceExpression ibp_reduce(const TraceExpression& e, int max_order);

bool trace_equal(const TraceExpression& a, const TraceExpression& b);

/// theta = 0 image: letters commute, then IBP in the commutative ring.
TraceExpression commutative_specialize(const TraceExpression& e);
bool commutative_equal(const TraceExpression& a, const TraceExpression& b);

/// Terms whose word contains exactly k torsion letters.
TraceExpression torsion_part(const TraceExpression& e, int k);

/// "1/4*pi^2 t[h^4] - 2 t[d_1(h)^2]", or "0".
std::string to_string(const TraceExpression& e);
/// "2*pi^2 * ( 1/4 t[...] + ... )"; single unit terms drop the parentheses.
std::string render_with_prefactor(const TraceExpression& e, const Scalar& prefactor);

}  // namespace ncwres
