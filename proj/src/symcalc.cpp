#include "ncwres/symcalc.hpp"

#include <stdexcept>
#include <vector>

namespace ncwres {

Symbol::Symbol(int d) : d_(d) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range: " + std::to_string(d));
}

Symbol Symbol::term(const NCPoly& c, const XiMonomial& xi, int d) {
  Symbol s(d);
  s.add_term(c, xi);
  return s;
}

std::size_t Symbol::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, comp] : components_) n += comp.size();
  return n;
}

void Symbol::add_term(const NCPoly& c, const XiMonomial& xi) {
  if (c.is_zero()) return;
  auto& comp = components_[xi.degree()];
  auto [it, inserted] = comp.try_emplace(xi, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comp.erase(it);
  }
  if (comp.empty()) components_.erase(xi.degree());
}

Symbol& Symbol::operator+=(const Symbol& o) {
  for (const auto& [k, comp] : o.components_) {
    for (const auto& [xi, c] : comp) add_term(c, xi);
  }
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  for (const auto& [k, comp] : o.components_) {
    for (const auto& [xi, c] : comp) add_term(-c, xi);
  }
  return *this;
}

Symbol& Symbol::operator*=(const Rational& c) {
  if (c == 0) {
    components_.clear();
    return *this;
  }
  for (auto& [k, comp] : components_) {
    for (auto& [xi, p] : comp) p *= c;
  }
  return *this;
}

Symbol partial_xi(const Symbol& s, int axis) {
  if (axis < 1 || axis > s.dim()) throw std::invalid_argument("xi axis out of range: " + std::to_string(axis));
  Symbol out(s.dim());
  const auto i = static_cast<std::size_t>(axis - 1);
  for (const auto& [k, comp] : s.components()) {
    for (const auto& [xi, c] : comp) {
      if (xi.alpha[i] > 0) {
        XiMonomial lower = xi;
        --lower.alpha[i];
        out.add_term(Rational(xi.alpha[i]) * c, lower);
      }
      if (xi.m != 0) {
        XiMonomial raised = xi;
        ++raised.alpha[i];
        --raised.m;
        out.add_term(Rational(2 * xi.m) * c, raised);
      }
    }
  }
  return out;
}

Symbol partial_xi(const Symbol& s, const MultiIndex& gamma) {
  Symbol out = s;
  for (int a = 1; a <= s.dim(); ++a) {
    for (int k = 0; k < gamma[a - 1]; ++k) out = partial_xi(out, a);
  }
  return out;
}

Symbol derive_coefficients(const Symbol& s, int axis) {
  Symbol out(s.dim());
  for (const auto& [k, comp] : s.components()) {
    for (const auto& [xi, c] : comp) out.add_term(derive(c, axis, s.dim()), xi);
  }
  return out;
}

Symbol derive_coefficients(const Symbol& s, const MultiIndex& gamma) {
  Symbol out = s;
  for (int a = 1; a <= s.dim(); ++a) {
    for (int k = 0; k < gamma[a - 1]; ++k) out = derive_coefficients(out, a);
  }
  return out;
}

Rational inverse_factorial(const MultiIndex& g) {
  mpz_class f = 1;
  for (auto v : g) {
    for (int i = 2; i <= v; ++i) f *= i;
  }
  return Rational(mpz_class(1), f);
}

namespace {

void check_same_dim(const Symbol& p, const Symbol& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("symbols of different dimension");
}

XiMonomial xi_mul(const XiMonomial& a, const XiMonomial& b) {
  XiMonomial r;
  for (int i = 0; i < kMaxDim; ++i) r.alpha[i] = static_cast<std::uint8_t>(a.alpha[i] + b.alpha[i]);
  r.m = a.m + b.m;
  return r;
}

/// Multi-indices over the first d axes with |gamma| <= n, ordered by |gamma|
/// and then lexicographically.
std::vector<MultiIndex> gammas_up_to(int d, int n) {
  std::vector<MultiIndex> out;
  if (n < 0) return out;
  out.push_back(MultiIndex{});
  std::size_t level_begin = 0;
  for (int lvl = 1; lvl <= n; ++lvl) {
    const std::size_t level_end = out.size();
    std::vector<MultiIndex> next;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // extend only at or after the last nonzero axis to avoid duplicates
      int last = 0;
      for (int a = 0; a < d; ++a) {
        if (out[i][a] > 0) last = a;
      }
      for (int a = last; a < d; ++a) {
        MultiIndex g = out[i];
        ++g[a];
        next.push_back(g);
      }
    }
    level_begin = level_end;
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

/// One gamma term of the composition, restricted to degrees >= min_degree.
Symbol gamma_term(const Symbol& dp, const Symbol& dq, const Rational& weight, int min_degree) {
  Symbol out(dp.dim());
  for (const auto& [kp, cp] : dp.components()) {
    for (const auto& [kq, cq] : dq.components()) {
      if (kp + kq < min_degree) continue;
      for (const auto& [xp, p] : cp) {
        for (const auto& [xq, q] : cq) out.add_term(weight * multiply(p, q), xi_mul(xp, xq));
      }
    }
  }
  return out;
}

struct GammaPlan {
  std::vector<MultiIndex> gammas;
  std::vector<Symbol> dp;
  std::vector<Symbol> dq;
};

/// Components of degree >= k.
Symbol truncate_below(const Symbol& s, int k) {
  Symbol out(s.dim());
  for (auto it = s.components().lower_bound(k); it != s.components().end(); ++it) {
    for (const auto& [xi, c] : it->second) out.add_term(c, xi);
  }
  return out;
}

// At level |gamma| = L a derived term contributes only when
// deg(d_xi^gamma p) + deg(q) >= min_degree, so the parts of p and q that
// cannot reach the floor are dropped before differentiating.
int p_floor(const Symbol& q, int min_degree, int level) { return min_degree - q.max_degree() + level; }
int q_floor(const Symbol& p, int min_degree, int level) { return min_degree - p.max_degree() + level; }

GammaPlan plan_product(const Symbol& p, const Symbol& q, int min_degree) {
  GammaPlan plan;
  if (p.is_zero() || q.is_zero()) return plan;
  const int n = p.max_degree() + q.max_degree() - min_degree;
  plan.gammas = gammas_up_to(p.dim(), n);
  std::map<MultiIndex, std::size_t> index;
  for (const auto& g : plan.gammas) {
    const int level = total_order(g);
    if (level == 0) {
      plan.dp.push_back(p);
      plan.dq.push_back(q);
    } else {
      int a = 0;
      while (g[a] == 0) ++a;
      MultiIndex parent = g;
      --parent[a];
      const auto src = index.at(parent);
      if (plan.dp[src].is_zero() || plan.dq[src].is_zero()) {
        // every descendant of a vanishing term vanishes too
        plan.dp.emplace_back(p.dim());
        plan.dq.emplace_back(p.dim());
      } else {
        // dp[src] is already differentiated; one more step lowers degrees by one
        plan.dp.push_back(partial_xi(truncate_below(plan.dp[src], min_degree - q.max_degree() + 1), a + 1));
        plan.dq.push_back(derive_coefficients(truncate_below(plan.dq[src], q_floor(p, min_degree, level)), a + 1));
      }
    }
    index.emplace(g, plan.dp.size() - 1);
  }
  return plan;
}

}  // namespace

Symbol symbol_product(const Symbol& p, const Symbol& q, int min_degree) {
  check_same_dim(p, q);
  const GammaPlan plan = plan_product(p, q, min_degree);
  const auto n = static_cast<std::ptrdiff_t>(plan.gammas.size());
  std::vector<Symbol> partial(plan.gammas.size(), Symbol(p.dim()));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    partial[u] = gamma_term(plan.dp[u], plan.dq[u], inverse_factorial(plan.gammas[u]), min_degree);
  }
  Symbol out(p.dim());
  for (const auto& s : partial) out += s;
  return out;
}

Symbol symbol_product_serial(const Symbol& p, const Symbol& q, int min_degree) {
  check_same_dim(p, q);
  Symbol out(p.dim());
  if (p.is_zero() || q.is_zero()) return out;
  const int n = p.max_degree() + q.max_degree() - min_degree;
  for (const auto& g : gammas_up_to(p.dim(), n)) {
    const int level = total_order(g);
    const Symbol dq = derive_coefficients(truncate_below(q, q_floor(p, min_degree, level)), g);
    if (dq.is_zero()) continue;
    out += gamma_term(partial_xi(truncate_below(p, p_floor(q, min_degree, level)), g), dq, inverse_factorial(g),
                      min_degree);
  }
  return out;
}

Symbol pointwise_product(const Symbol& p, const Symbol& q) {
  check_same_dim(p, q);
  if (p.is_zero() || q.is_zero()) return Symbol(p.dim());
  return gamma_term(p, q, Rational(1), p.min_degree() + q.min_degree());
}

Symbol homogeneous_component(const Symbol& s, int k) {
  Symbol out(s.dim());
  auto it = s.components().find(k);
  if (it == s.components().end()) return out;
  for (const auto& [xi, c] : it->second) out.add_term(c, xi);
  return out;
}

namespace {

bool fold_once(Symbol::Component& comp, int d) {
  for (const auto& [xi, c] : comp) {
    for (int a = 0; a < d; ++a) {
      if (xi.alpha[a] < 2) continue;
      XiMonomial base = xi;
      base.alpha[a] = static_cast<std::uint8_t>(base.alpha[a] - 2);
      std::vector<XiMonomial> members;
      for (int b = 0; b < d; ++b) {
        XiMonomial m = base;
        m.alpha[b] = static_cast<std::uint8_t>(m.alpha[b] + 2);
        auto it = comp.find(m);
        if (it == comp.end() || it->second != c) break;
        members.push_back(m);
      }
      if (members.size() != static_cast<std::size_t>(d)) continue;
      const NCPoly coef = c;
      for (const auto& m : members) comp.erase(m);
      ++base.m;
      NCPoly& slot = comp[base];
      slot += coef;
      if (slot.is_zero()) comp.erase(base);
      return true;
    }
  }
  return false;
}

}  // namespace

Symbol fold_norm_squares(const Symbol& s) {
  Symbol out(s.dim());
  for (const auto& [k, comp] : s.components()) {
    Symbol::Component work = comp;
    while (fold_once(work, s.dim())) {
    }
    for (const auto& [xi, c] : work) out.add_term(c, xi);
  }
  return out;
}

Symbol map_coefficients(const Symbol& s, NCPoly (*f)(const NCPoly&)) {
  Symbol out(s.dim());
  for (const auto& [k, comp] : s.components()) {
    for (const auto& [xi, c] : comp) out.add_term(f(c), xi);
  }
  return out;
}

std::string xi_to_string(const XiMonomial& xi, int d) {
  std::string out;
  for (int a = 0; a < d; ++a) {
    if (xi.alpha[a] == 0) continue;
    if (!out.empty()) out += ".";
    out += "xi" + std::to_string(a + 1);
    if (xi.alpha[a] > 1) out += "^" + std::to_string(xi.alpha[a]);
  }
  if (xi.m != 0) {
    if (!out.empty()) out += ".";
    out += "|xi|^" + std::to_string(2 * xi.m);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Symbol& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (auto it = s.components().rbegin(); it != s.components().rend(); ++it) {
    out += "degree " + std::to_string(it->first) + ":\n";
    for (const auto& [xi, c] : it->second) out += "  (" + to_string(c) + ") * " + xi_to_string(xi, s.dim()) + "\n";
  }
  return out;
}

}  // namespace ncwres
