#pragma once

// Free noncommutative polynomials over the letters h, h^-1, T_a, X and their
// derivatives, with exact rational coefficients.

#include "ncwres/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncwres {

/// Largest supported torus dimension.
inline constexpr int kMaxDim = 8;

/// Derivative or momentum multi-index; only the first d entries are used.
using MultiIndex = std::array<std::uint8_t, kMaxDim>;

int total_order(const MultiIndex& m);
MultiIndex unit_index(int axis);  // axis is 1-based
MultiIndex index_sum(const MultiIndex& a, const MultiIndex& b);

enum class Base : std::uint8_t { H = 0, Hinv = 1, T = 2, X = 3 };

/// One atom of the alphabet: delta^deriv applied to h, T_axis or X, or an
/// underived h^-1.  The defaulted ordering is the global letter order
/// H < Hinv < T_1 < ... < T_d < X, then lexicographic on deriv.
struct Letter {
  Base base = Base::H;
  std::uint8_t axis = 0;  // 1..d for T, 0 otherwise
  MultiIndex deriv{};

  static Letter h() { return {}; }
  static Letter hinv() { return {Base::Hinv, 0, {}}; }
  static Letter t(int axis) { return {Base::T, static_cast<std::uint8_t>(axis), {}}; }
  static Letter x() { return {Base::X, 0, {}}; }

  int order() const { return total_order(deriv); }
  bool is_plain_h() const { return base == Base::H && order() == 0; }
  bool is_hinv() const { return base == Base::Hinv; }
  /// Anything other than an underived h or h^-1.
  bool is_special() const { return !(is_plain_h() || is_hinv()); }

  auto operator<=>(const Letter&) const = default;
};

Letter derived(Letter l, int axis);

using Word = std::vector<Letter>;

/// Cancel adjacent underived (h, h^-1) pairs until none remain.
Word normalize(Word w);
/// Sort letters and cancel h against h^-1 (theta = 0 image).
Word commutative_normalize(Word w);
int differential_order(const Word& w);
/// Net power of h: +1 per h letter (derived or not), -1 per h^-1.
int h_degree(const Word& w);

class NCPoly {
 public:
  using Terms = std::map<Word, Rational>;

  NCPoly() = default;
  static NCPoly one() { return word({}); }
  static NCPoly constant(const Rational& c) { return word({}, c); }
  static NCPoly letter(const Letter& l, const Rational& c = 1) { return word({l}, c); }
  /// The word is normalized before insertion.
  static NCPoly word(Word w, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Longest word length; 0 for the zero polynomial.
  std::size_t max_length() const;

  void add_term(Word w, const Rational& c);
  /// Adds a word already known to be in normal form.
  void add_normalized(const Word& w, const Rational& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const Rational& c);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= Rational(-1); }
  friend NCPoly operator*(const Rational& c, NCPoly a) { return a *= c; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend bool operator==(const NCPoly&, const NCPoly&) = default;

 private:
  Terms terms_;
};

NCPoly multiply(const NCPoly& p, const NCPoly& q);

/// delta_axis by the Leibniz rule; h^-1 expands to -h^-1 delta(h) h^-1.
/// Throws std::invalid_argument unless 1 <= axis <= d.
NCPoly derive(const NCPoly& p, int axis, int d);
/// delta^gamma, axes applied in increasing order.
NCPoly derive(const NCPoly& p, const MultiIndex& gamma, int d);

/// h^p as a word of |p| letters h or h^-1.
NCPoly expand_h_power(int p);
/// Accepts only integral exponents; throws std::domain_error otherwise.
NCPoly expand_h_power(const Rational& p);

NCPoly commutative_image(const NCPoly& p);

/// h = 1: drops h^{+-1} letters and kills words with a derived h.
NCPoly substitute_flat_h(const NCPoly& p);

/// Number of occurrences of T letters (any axis, any derivative).
int torsion_degree(const Word& w);

// Rendering: h^2.T1.d_1(h), "0" for the empty polynomial.
std::string letter_to_string(const Letter& l);
std::string word_to_string(const Word& w);
std::string to_string(const NCPoly& p);

}  // namespace ncwres
