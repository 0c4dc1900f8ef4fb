#include "ncwres/ncalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncwres {

int total_order(const MultiIndex& m) {
  int s = 0;
  for (auto v : m) s += v;
  return s;
}

MultiIndex unit_index(int axis) {
  MultiIndex m{};
  m[axis - 1] = 1;
  return m;
}

MultiIndex index_sum(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return r;
}

Letter derived(Letter l, int axis) {
  if (l.base == Base::Hinv) throw std::logic_error("h^-1 is never derived directly");
  ++l.deriv[axis - 1];
  return l;
}

namespace {

bool cancels(const Letter& a, const Letter& b) {
  return (a.is_plain_h() && b.is_hinv()) || (a.is_hinv() && b.is_plain_h());
}

void check_axis(int axis, int d) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range: " + std::to_string(d));
  if (axis < 1 || axis > d) {
    throw std::invalid_argument("axis " + std::to_string(axis) + " out of range 1.." + std::to_string(d));
  }
}

}  // namespace

Word normalize(Word w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && cancels(out.back(), l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word commutative_normalize(Word w) {
  int net = 0;
  Word out;
  for (const auto& l : w) {
    if (l.is_plain_h()) {
      ++net;
    } else if (l.is_hinv()) {
      --net;
    } else {
      out.push_back(l);
    }
  }
  const Letter power = net >= 0 ? Letter::h() : Letter::hinv();
  out.insert(out.end(), static_cast<std::size_t>(std::abs(net)), power);
  std::sort(out.begin(), out.end());
  return out;
}

int differential_order(const Word& w) {
  int s = 0;
  for (const auto& l : w) s += l.order();
  return s;
}

int h_degree(const Word& w) {
  int s = 0;
  for (const auto& l : w) {
    if (l.base == Base::H) ++s;
    if (l.base == Base::Hinv) --s;
  }
  return s;
}

int torsion_degree(const Word& w) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](const Letter& l) { return l.base == Base::T; }));
}

NCPoly NCPoly::word(Word w, const Rational& c) {
  NCPoly p;
  p.add_term(std::move(w), c);
  return p;
}

std::size_t NCPoly::max_length() const {
  std::size_t n = 0;
  for (const auto& [w, c] : terms_) n = std::max(n, w.size());
  return n;
}

void NCPoly::add_term(Word w, const Rational& c) { add_normalized(normalize(std::move(w)), c); }

void NCPoly::add_normalized(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_normalized(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_normalized(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) { return multiply(a, b); }

NCPoly multiply(const NCPoly& p, const NCPoly& q) {
  NCPoly out;
  Word buf;
  for (const auto& [wp, cp] : p.terms()) {
    for (const auto& [wq, cq] : q.terms()) {
      // Only the seam between wp and wq can cancel.
      buf = wp;
      std::size_t j = 0;
      while (!buf.empty() && j < wq.size() && cancels(buf.back(), wq[j])) {
        buf.pop_back();
        ++j;
      }
      buf.insert(buf.end(), wq.begin() + static_cast<std::ptrdiff_t>(j), wq.end());
      out.add_normalized(buf, cp * cq);
    }
  }
  return out;
}

// Derivation preserves normal form: h -> delta(h) leaves no plain h behind and
// h^-1 -> -h^-1 delta(h) h^-1 keeps the original neighbours of h^-1.
NCPoly derive(const NCPoly& p, int axis, int d) {
  check_axis(axis, d);
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      if (w[i].is_hinv()) {
        nw.push_back(Letter::hinv());
        nw.push_back(derived(Letter::h(), axis));
        nw.push_back(Letter::hinv());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        out.add_normalized(nw, -c);
      } else {
        nw.push_back(derived(w[i], axis));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        out.add_normalized(nw, c);
      }
    }
  }
  return out;
}

NCPoly derive(const NCPoly& p, const MultiIndex& gamma, int d) {
  NCPoly out = p;
  for (int a = 1; a <= kMaxDim; ++a) {
    for (int k = 0; k < gamma[a - 1]; ++k) out = derive(out, a, d);
  }
  return out;
}

NCPoly expand_h_power(int p) {
  const Letter l = p >= 0 ? Letter::h() : Letter::hinv();
  return NCPoly::word(Word(static_cast<std::size_t>(std::abs(p)), l));
}

NCPoly expand_h_power(const Rational& p) {
  if (p.get_den() != 1) throw std::domain_error("non-integer power of h: " + to_string(p));
  return expand_h_power(static_cast<int>(to_int64(p.get_num())));
}

NCPoly commutative_image(const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) out.add_normalized(commutative_normalize(w), c);
  return out;
}

NCPoly substitute_flat_h(const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word nw;
    bool dead = false;
    for (const auto& l : w) {
      if (l.base == Base::H && l.order() > 0) {
        dead = true;
        break;
      }
      if (l.is_special()) nw.push_back(l);
    }
    if (!dead) out.add_normalized(nw, c);
  }
  return out;
}

std::string letter_to_string(const Letter& l) {
  std::string base;
  switch (l.base) {
    case Base::H: base = "h"; break;
    case Base::Hinv: return "h^-1";
    case Base::T: base = "T" + std::to_string(l.axis); break;
    case Base::X: base = "X"; break;
  }
  if (l.order() == 0) return base;
  std::string idx;
  for (int a = 0; a < kMaxDim; ++a) idx.append(l.deriv[a], static_cast<char>('1' + a));
  return "d_" + idx + "(" + base + ")";
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const auto run = static_cast<int>(j - i);
    if (!out.empty()) out += ".";
    if (w[i].is_hinv()) {
      out += "h^-" + std::to_string(run);
    } else {
      out += letter_to_string(w[i]);
      if (run > 1) out += "^" + std::to_string(run);
    }
    i = j;
  }
  return out;
}

std::string to_string(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (w.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += word_to_string(w);
    } else {
      out += to_string(mag) + " " + word_to_string(w);
    }
  }
  return out;
}

}  // namespace ncwres
