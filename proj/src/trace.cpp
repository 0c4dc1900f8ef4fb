#include "ncwres/trace.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace ncwres {

namespace {

bool cancels(const Letter& a, const Letter& b) {
  return (a.is_plain_h() && b.is_hinv()) || (a.is_hinv() && b.is_plain_h());
}

}  // namespace

Word cyclic_normal_form(Word w) {
  w = normalize(std::move(w));
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && cancels(w[hi - 1], w[lo])) {
    ++lo;
    --hi;
  }
  Word core(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
  const std::size_t n = core.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = core[(r + k) % n];
      const auto& b = core[(best + k) % n];
      if (a < b) {
        best = r;
        break;
      }
      if (b < a) break;
    }
  }
  std::rotate(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(best), core.end());
  return core;
}

// --- TraceExpression --------------------------------------------------------

TraceExpression TraceExpression::trace_of(const NCPoly& p, const Scalar& factor) {
  TraceExpression e;
  for (const auto& [w, c] : p.terms()) e.add(w, Scalar(c) * factor);
  return e;
}

TraceExpression TraceExpression::trace_of(const Word& w, const Scalar& factor) {
  TraceExpression e;
  e.add(w, factor);
  return e;
}

int TraceExpression::max_order() const {
  int m = 0;
  for (const auto& [k, q] : terms_) m = std::max(m, differential_order(k.word));
  return m;
}

void TraceExpression::add(const Word& w, const Scalar& s) {
  add_canonical(TraceKey{s.pi_power, cyclic_normal_form(w)}, s.q);
}

void TraceExpression::add_canonical(const TraceKey& key, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

TraceExpression& TraceExpression::operator+=(const TraceExpression& o) {
  for (const auto& [k, q] : o.terms_) add_canonical(k, q);
  return *this;
}

TraceExpression& TraceExpression::operator-=(const TraceExpression& o) {
  for (const auto& [k, q] : o.terms_) add_canonical(k, -q);
  return *this;
}

TraceExpression& TraceExpression::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms out;
  for (auto& [k, q] : terms_) out.emplace(TraceKey{k.pi_power + s.pi_power, k.word}, q * s.q);
  terms_ = std::move(out);
  return *this;
}

TraceExpression cyclic_canonicalize(const std::vector<std::pair<Scalar, Word>>& raw) {
  TraceExpression e;
  for (const auto& [s, w] : raw) e.add(w, s);
  return e;
}

// --- integration by parts ---------------------------------------------------

namespace {

/// Quantities preserved by t(delta_a(w)) -> Leibniz expansion, apart from the
/// total derivative which grows by e_a.
struct Grade {
  int hdeg = 0;
  std::array<int, kMaxDim> tcount{};
  int xcount = 0;
  MultiIndex deriv{};
  auto operator<=>(const Grade&) const = default;
};

Grade grade_of(const Word& w) {
  Grade g;
  g.hdeg = h_degree(w);
  for (const auto& l : w) {
    if (l.base == Base::T) ++g.tcount[l.axis - 1];
    if (l.base == Base::X) ++g.xcount;
    for (int a = 0; a < kMaxDim; ++a) g.deriv[a] = static_cast<std::uint8_t>(g.deriv[a] + l.deriv[a]);
  }
  return g;
}

Word canonical(const Word& w, TraceMode mode) {
  return mode == TraceMode::Noncommutative ? cyclic_normal_form(w) : commutative_normalize(w);
}

int max_letter_order(const Word& w) {
  int m = 0;
  for (const auto& l : w) m = std::max(m, l.order());
  return m;
}

/// Larger words are eliminated first, so reduced forms prefer short words
/// with derivatives spread over several letters.
bool more_complex(const Word& a, const Word& b) {
  const auto hinv = [](const Word& w) {
    return std::count_if(w.begin(), w.end(), [](const Letter& l) { return l.is_hinv(); });
  };
  const auto ka = std::make_tuple(a.size(), max_letter_order(a), hinv(a));
  const auto kb = std::make_tuple(b.size(), max_letter_order(b), hinv(b));
  if (ka != kb) return ka > kb;
  return b < a;
}

MultiIndex index_sub(MultiIndex a, const MultiIndex& b) {
  for (int i = 0; i < kMaxDim; ++i) a[i] = static_cast<std::uint8_t>(a[i] - b[i]);
  return a;
}

void sub_indices(const MultiIndex& bound, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == kMaxDim) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= bound[pos]; ++v) {
    cur[pos] = static_cast<std::uint8_t>(v);
    sub_indices(bound, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

std::vector<MultiIndex> all_sub_indices(const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  MultiIndex cur{};
  sub_indices(bound, 0, cur, out);
  return out;
}

/// Multisets of nonzero multi-indices summing to rest, as non-increasing lists.
void partitions(const MultiIndex& rest, const std::optional<MultiIndex>& cap, std::vector<MultiIndex>& cur,
                std::vector<std::vector<MultiIndex>>& out) {
  if (total_order(rest) == 0) {
    out.push_back(cur);
    return;
  }
  for (const auto& p : all_sub_indices(rest)) {
    if (total_order(p) == 0) continue;
    if (cap && *cap < p) continue;
    cur.push_back(p);
    partitions(index_sub(rest, p), p, cur, out);
    cur.pop_back();
  }
}

/// All multisets of special letters with the given torsion/X content and
/// total derivative.
std::vector<Word> special_multisets(const Grade& g) {
  std::vector<Letter> slots;
  for (int a = 0; a < kMaxDim; ++a) {
    for (int k = 0; k < g.tcount[a]; ++k) slots.push_back(Letter::t(a + 1));
  }
  for (int k = 0; k < g.xcount; ++k) slots.push_back(Letter::x());

  std::vector<Word> out;
  Word cur;
  auto assign = [&](auto&& self, std::size_t i, const MultiIndex& rest) -> void {
    if (i == slots.size()) {
      std::vector<std::vector<MultiIndex>> parts;
      std::vector<MultiIndex> tmp;
      partitions(rest, std::nullopt, tmp, parts);
      for (const auto& part : parts) {
        Word w = cur;
        for (const auto& p : part) w.push_back(Letter{Base::H, 0, p});
        std::sort(w.begin(), w.end());
        out.push_back(std::move(w));
      }
      return;
    }
    for (const auto& gam : all_sub_indices(rest)) {
      Letter l = slots[i];
      l.deriv = gam;
      // identical slots take non-decreasing derivatives
      if (i > 0 && slots[i - 1] == slots[i] && l < cur.back()) continue;
      cur.push_back(l);
      self(self, i + 1, index_sub(rest, gam));
      cur.pop_back();
    }
  };
  assign(assign, 0, g.deriv);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void run_vectors(std::size_t gaps, int target, int budget, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == gaps) {
    if (std::abs(target) <= budget) {
      cur.push_back(target);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int r = -budget; r <= budget; ++r) {
    const int left = budget - std::abs(r);
    if (std::abs(target - r) > left) continue;
    cur.push_back(r);
    run_vectors(gaps, target - r, left, cur, out);
    cur.pop_back();
  }
}

void append_run(Word& w, int r) {
  const Letter l = r >= 0 ? Letter::h() : Letter::hinv();
  w.insert(w.end(), static_cast<std::size_t>(std::abs(r)), l);
}

/// Canonical words of grade g with at most max_len letters.
std::set<Word> words_of_grade(const Grade& g, std::size_t max_len, TraceMode mode) {
  std::set<Word> out;
  for (const auto& specials : special_multisets(g)) {
    const int dh = static_cast<int>(
        std::count_if(specials.begin(), specials.end(), [](const Letter& l) { return l.base == Base::H; }));
    const int target = g.hdeg - dh;
    const auto s = specials.size();
    if (s + static_cast<std::size_t>(std::abs(target)) > max_len) continue;
    if (s == 0 || mode == TraceMode::Commutative) {
      Word w = specials;
      append_run(w, target);
      out.insert(canonical(w, mode));
      continue;
    }
    const int budget = static_cast<int>(max_len - s);
    std::vector<std::vector<int>> runs;
    std::vector<int> cur;
    run_vectors(s, target, budget, cur, runs);
    Word perm = specials;
    do {
      for (const auto& rv : runs) {
        Word w;
        for (std::size_t i = 0; i < s; ++i) {
          w.push_back(perm[i]);
          append_run(w, rv[i]);
        }
        out.insert(canonical(w, mode));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

using Row = std::vector<std::pair<int, Rational>>;  // sorted by id

Row axpy(const Row& row, const Rational& f, const Row& piv) {
  Row out;
  out.reserve(row.size() + piv.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || piv[j].first < row[i].first) {
      out.emplace_back(piv[j].first, -f * piv[j].second);
      ++j;
    } else {
      Rational v = row[i].second - f * piv[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Echelon basis of the IBP relations in one graded piece.
struct RelationSystem {
  std::map<Word, int> id;  // id 0 = most complex word
  std::vector<Word> words;
  std::map<int, Row> pivots;  // leading id -> row with leading coefficient 1

  Row reduce(Row row) const {
    std::size_t pos = 0;
    while (pos < row.size()) {
      auto it = pivots.find(row[pos].first);
      if (it == pivots.end()) {
        ++pos;
        continue;
      }
      const Rational f = row[pos].second;
      row = axpy(row, f, it->second);
      // entries before pos are untouched by a pivot that starts at pos
    }
    return row;
  }
};

std::shared_ptr<const RelationSystem> build_system(const Grade& g, std::size_t max_len, TraceMode mode,
                                                   const std::set<Word>& extra) {
  std::vector<std::map<Word, Rational>> relations;
  for (int a = 1; a <= kMaxDim; ++a) {
    if (g.deriv[a - 1] == 0) continue;
    Grade src = g;
    --src.deriv[a - 1];
    for (const auto& w : words_of_grade(src, max_len, mode)) {
      const NCPoly dw = derive(NCPoly::word(w), a, kMaxDim);
      std::map<Word, Rational> rel;
      for (const auto& [t, c] : dw.terms()) {
        auto& slot = rel[canonical(t, mode)];
        slot += c;
      }
      std::erase_if(rel, [](const auto& kv) { return kv.second == 0; });
      if (!rel.empty()) relations.push_back(std::move(rel));
    }
  }

  auto sys = std::make_shared<RelationSystem>();
  std::set<Word> universe = extra;
  for (const auto& rel : relations) {
    for (const auto& [w, c] : rel) universe.insert(w);
  }
  sys->words.assign(universe.begin(), universe.end());
  std::sort(sys->words.begin(), sys->words.end(), more_complex);
  for (std::size_t i = 0; i < sys->words.size(); ++i) sys->id.emplace(sys->words[i], static_cast<int>(i));

  for (const auto& rel : relations) {
    Row row;
    for (const auto& [w, c] : rel) row.emplace_back(sys->id.at(w), c);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    row = sys->reduce(std::move(row));
    if (row.empty()) continue;
    const Rational lead = row.front().second;
    for (auto& [i, c] : row) c /= lead;
    sys->pivots.emplace(row.front().first, std::move(row));
  }
  return sys;
}

struct SystemKey {
  Grade grade;
  std::size_t max_len;
  TraceMode mode;
  auto operator<=>(const SystemKey&) const = default;
};

/// Shared across calls; systems are immutable once built.
class SystemCache {
 public:
  std::shared_ptr<const RelationSystem> get(const SystemKey& key, const std::set<Word>& words) {
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end() && covers(*it->second, words)) return it->second;
    }
    auto sys = build_system(key.grade, key.max_len, key.mode, words);
    std::lock_guard lock(mu_);
    cache_[key] = sys;
    return sys;
  }

 private:
  static bool covers(const RelationSystem& sys, const std::set<Word>& words) {
    return std::all_of(words.begin(), words.end(), [&](const Word& w) { return sys.id.contains(w); });
  }
  std::mutex mu_;
  std::map<SystemKey, std::shared_ptr<const RelationSystem>> cache_;
};

SystemCache& system_cache() {
  static SystemCache cache;
  return cache;
}

TraceExpression reduce_impl(const TraceExpression& e, TraceMode mode) {
  // grade -> pi power -> terms
  std::map<Grade, std::map<int, std::map<Word, Rational>>> pieces;
  for (const auto& [k, q] : e.terms()) {
    Word w = canonical(k.word, mode);
    auto& slot = pieces[grade_of(w)][k.pi_power][w];
    slot += q;
  }

  TraceExpression out;
  for (const auto& [g, by_pi] : pieces) {
    std::size_t max_len = 0;
    std::set<Word> words;
    for (const auto& [pi, terms] : by_pi) {
      for (const auto& [w, q] : terms) {
        if (q == 0) continue;
        max_len = std::max(max_len, w.size());
        words.insert(w);
      }
    }
    if (words.empty()) continue;
    if (total_order(g.deriv) == 0) {
      for (const auto& [pi, terms] : by_pi) {
        for (const auto& [w, q] : terms) out.add_canonical(TraceKey{pi, w}, q);
      }
      continue;
    }
    const auto sys = system_cache().get(SystemKey{g, max_len + 1, mode}, words);
    for (const auto& [pi, terms] : by_pi) {
      Row row;
      for (const auto& [w, q] : terms) {
        if (q != 0) row.emplace_back(sys->id.at(w), q);
      }
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [i, q] : sys->reduce(std::move(row))) out.add_canonical(TraceKey{pi, sys->words[i]}, q);
    }
  }
  return out;
}

}  // namespace

TraceExpression ibp_reduce(const TraceExpression& e, TraceMode mode) { return reduce_impl(e, mode); }

TraceExpression ibp_reduce(const TraceExpression& e, int max_order) {
  if (e.max_order() > max_order) {
    throw std::invalid_argument("expression has differential order " + std::to_string(e.max_order()) +
                                " above the declared bound " + std::to_string(max_order));
  }
  return reduce_impl(e, TraceMode::Noncommutative);
}

bool trace_equal(const TraceExpression& a, const TraceExpression& b) { return ibp_reduce(a - b).is_zero(); }

TraceExpression commutative_specialize(const TraceExpression& e) {
  TraceExpression comm;
  for (const auto& [k, q] : e.terms()) comm.add_canonical(TraceKey{k.pi_power, commutative_normalize(k.word)}, q);
  return reduce_impl(comm, TraceMode::Commutative);
}

bool commutative_equal(const TraceExpression& a, const TraceExpression& b) {
  return commutative_specialize(a - b).is_zero();
}

TraceExpression torsion_part(const TraceExpression& e, int k) {
  TraceExpression out;
  for (const auto& [key, q] : e.terms()) {
    if (torsion_degree(key.word) == k) out.add_canonical(key, q);
  }
  return out;
}

namespace {

void append_term(std::string& out, const Rational& c, int pi, const Word& w) {
  const bool neg = c < 0;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  const Scalar mag(abs(c), pi);
  if (!(mag.q == 1 && pi == 0)) out += to_string(mag) + " ";
  out += "t[" + word_to_string(w) + "]";
}

}  // namespace

std::string to_string(const TraceExpression& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [k, q] : e.terms()) append_term(out, q, k.pi_power, k.word);
  return out;
}

std::string render_with_prefactor(const TraceExpression& e, const Scalar& prefactor) {
  if (e.is_zero()) return "0";
  if (prefactor.is_zero()) throw std::invalid_argument("zero prefactor");
  std::string inner;
  for (const auto& [k, q] : e.terms()) append_term(inner, q / prefactor.q, k.pi_power - prefactor.pi_power, k.word);
  const std::string head = to_string(prefactor) + " * ";
  const bool single = e.size() == 1 && e.terms().begin()->second == prefactor.q &&
                      e.terms().begin()->first.pi_power == prefactor.pi_power;
  return single ? head + inner : head + "( " + inner + " )";
}

}  // namespace ncwres
