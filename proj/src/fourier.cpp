#include "ncwres/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

namespace ncwres {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Coefficients below this are dropped from intermediate products.
constexpr double kPrune = 1e-15;

double frac_distance_to_integer(double v) { return std::abs(v - std::round(v)); }

}  // namespace

ThetaMatrix::ThetaMatrix(int d, std::vector<double> entries) : d_(d), entries_(std::move(entries)) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("theta dimension out of range");
  if (entries_.size() != static_cast<std::size_t>(d * d)) throw std::invalid_argument("theta must be d x d");
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (frac_distance_to_integer((*this)(j, k) + (*this)(k, j)) > 1e-12) {
        throw std::invalid_argument("theta must be antisymmetric modulo integers");
      }
    }
  }
}

ThetaMatrix ThetaMatrix::zero(int d) { return ThetaMatrix(d, std::vector<double>(static_cast<std::size_t>(d * d), 0.0)); }

ThetaMatrix ThetaMatrix::from_upper(int d, const std::vector<double>& upper) {
  std::vector<double> e(static_cast<std::size_t>(d * d), 0.0);
  std::size_t n = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      if (n >= upper.size()) throw std::invalid_argument("not enough theta entries");
      e[static_cast<std::size_t>(j * d + k)] = upper[n];
      e[static_cast<std::size_t>(k * d + j)] = -upper[n];
      ++n;
    }
  }
  return ThetaMatrix(d, std::move(e));
}

Complex ThetaMatrix::phase(const FourierIndex& a, const FourierIndex& b) const {
  // Moving U_k^{b_k} left past U_j^{a_j} (j > k) picks up exp(2 pi i theta_jk a_j b_k).
  double s = 0;
  for (int j = 0; j < d_; ++j) {
    for (int k = 0; k < j; ++k) s += (*this)(j, k) * a[j] * b[k];
  }
  return std::polar(1.0, kTwoPi * s);
}

Complex ThetaMatrix::adjoint_phase(const FourierIndex& a) const {
  // (U_1^a1 ... U_d^ad)* = U_d^-ad ... U_1^-a1, reordered.
  double s = 0;
  for (int j = 0; j < d_; ++j) {
    for (int k = 0; k < j; ++k) s += (*this)(j, k) * a[j] * a[k];
  }
  return std::polar(1.0, kTwoPi * s);
}

// --- FourierElement ---------------------------------------------------------

FourierElement::FourierElement(ThetaMatrix theta) : theta_(std::move(theta)) {}

FourierElement FourierElement::monomial(const ThetaMatrix& theta, const FourierIndex& idx, Complex c) {
  FourierElement x(theta);
  x.add(idx, c);
  return x;
}

Complex FourierElement::coeff(const FourierIndex& idx) const {
  auto it = coeffs_.find(idx);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void FourierElement::add(const FourierIndex& idx, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

double FourierElement::prune(double tol) {
  double removed = 0;
  std::erase_if(coeffs_, [&](const auto& kv) {
    const double m = std::abs(kv.second);
    if (m > tol) return false;
    removed += m;
    return true;
  });
  return removed;
}

double FourierElement::l1_norm() const {
  double s = 0;
  for (const auto& [i, c] : coeffs_) s += std::abs(c);
  return s;
}

FourierElement& FourierElement::operator+=(const FourierElement& o) {
  if (!(o.theta_ == theta_)) throw std::invalid_argument("theta mismatch");
  for (const auto& [i, c] : o.coeffs_) add(i, c);
  return *this;
}

FourierElement& FourierElement::operator-=(const FourierElement& o) {
  if (!(o.theta_ == theta_)) throw std::invalid_argument("theta mismatch");
  for (const auto& [i, c] : o.coeffs_) add(i, -c);
  return *this;
}

FourierElement& FourierElement::operator*=(Complex c) {
  if (c == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [i, v] : coeffs_) v *= c;
  return *this;
}

// --- algebra ----------------------------------------------------------------

namespace {

void check_theta(const FourierElement& x, const FourierElement& y) {
  if (!(x.theta() == y.theta())) throw std::invalid_argument("theta mismatch");
}

FourierIndex index_add(const FourierIndex& a, const FourierIndex& b) {
  FourierIndex r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

FourierIndex index_neg(const FourierIndex& a) {
  FourierIndex r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = -a[i];
  return r;
}

constexpr std::size_t kMulChunk = 32;

}  // namespace

FourierElement nc_multiply_serial(const FourierElement& x, const FourierElement& y) {
  check_theta(x, y);
  FourierElement out(x.theta());
  for (const auto& [a, ca] : x.coeffs()) {
    for (const auto& [b, cb] : y.coeffs()) out.add(index_add(a, b), ca * cb * x.theta().phase(a, b));
  }
  return out;
}

FourierElement nc_multiply(const FourierElement& x, const FourierElement& y) {
  check_theta(x, y);
  const std::vector<std::pair<FourierIndex, Complex>> xs(x.coeffs().begin(), x.coeffs().end());
  const std::vector<std::pair<FourierIndex, Complex>> ys(y.coeffs().begin(), y.coeffs().end());
  const std::size_t chunks = (xs.size() + kMulChunk - 1) / kMulChunk;
  if (chunks <= 1) return nc_multiply_serial(x, y);
  std::vector<FourierElement> partial(chunks, FourierElement(x.theta()));
  const auto n = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    auto& local = partial[uc];
    const std::size_t end = std::min(xs.size(), (uc + 1) * kMulChunk);
    for (std::size_t i = uc * kMulChunk; i < end; ++i) {
      const auto& [a, ca] = xs[i];
      for (const auto& [b, cb] : ys) local.add(index_add(a, b), ca * cb * x.theta().phase(a, b));
    }
  }
  FourierElement out(x.theta());
  for (const auto& p : partial) out += p;
  return out;
}

Complex nc_trace(const FourierElement& x) { return x.coeff(FourierIndex{}); }

Complex nc_trace_product(const FourierElement& x, const FourierElement& y) {
  check_theta(x, y);
  Complex s{};
  for (const auto& [a, ca] : x.coeffs()) {
    const FourierIndex na = index_neg(a);
    auto it = y.coeffs().find(na);
    if (it != y.coeffs().end()) s += ca * it->second * x.theta().phase(a, na);
  }
  return s;
}

FourierElement nc_derive(const FourierElement& x, int axis) {
  if (axis < 1 || axis > x.dim()) throw std::invalid_argument("axis out of range: " + std::to_string(axis));
  FourierElement out(x.theta());
  for (const auto& [a, c] : x.coeffs()) out.add(a, c * static_cast<double>(a[axis - 1]));
  return out;
}

FourierElement nc_adjoint(const FourierElement& x) {
  FourierElement out(x.theta());
  for (const auto& [a, c] : x.coeffs()) out.add(index_neg(a), std::conj(c) * x.theta().adjoint_phase(a));
  return out;
}

NeumannInverse nc_invert_neumann(const FourierElement& x, double tol) {
  const double lambda = x.coeff(FourierIndex{}).real();
  if (!(lambda > 0)) throw std::domain_error("Neumann precondition violated: zero mode must be positive");
  FourierElement u = (1.0 / lambda) * x;
  u.add(FourierIndex{}, -1.0);
  u.prune(0.0);
  const double q = u.l1_norm();
  if (q >= 1) throw std::domain_error("Neumann precondition violated: ||u||_1 = " + std::to_string(q));

  NeumannInverse r{FourierElement::one(x.theta()), 0.0, 0};
  FourierElement term = FourierElement::one(x.theta());
  const FourierElement minus_u = -1.0 * u;
  double pruned = 0;
  int k = 0;
  while (q > 0 && std::pow(q, k + 1) / (1 - q) > tol) {
    term = nc_multiply(term, minus_u);
    pruned += term.prune(tol * 1e-4);
    r.inverse += term;
    ++k;
  }
  r.terms = k;
  r.inverse *= 1.0 / lambda;
  r.bound = (q > 0 ? std::pow(q, k + 1) / (1 - q) : 0.0) / lambda + pruned / lambda;
  return r;
}

double l1_distance(const FourierElement& a, const FourierElement& b) { return (a - b).l1_norm(); }

Assignment make_assignment(const ThetaMatrix& theta, std::map<std::string, FourierElement> atoms, double tol) {
  auto it = atoms.find("h");
  if (it == atoms.end()) throw std::invalid_argument("missing atom binding: h");
  for (const auto& [name, el] : atoms) {
    if (!(el.theta() == theta)) throw std::invalid_argument("theta mismatch for atom " + name);
  }
  const auto inv = nc_invert_neumann(it->second, tol);
  Assignment a{theta, std::move(atoms), inv.inverse, tol, 0.0};
  FourierElement check = nc_multiply(a.atoms.at("h"), a.h_inverse);
  check.add(FourierIndex{}, -1.0);
  a.residual = check.l1_norm();
  return a;
}

FourierElement random_selfadjoint(const ThetaMatrix& theta, std::uint64_t seed, int radius, double eps, int modes,
                                  double constant) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-radius, radius);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  FourierElement x = FourierElement::monomial(theta, FourierIndex{}, constant);
  for (int m = 0; m < modes; ++m) {
    FourierIndex idx{};
    bool nonzero = false;
    while (!nonzero) {
      for (int i = 0; i < theta.dim(); ++i) {
        idx[i] = coord(rng);
        nonzero = nonzero || idx[i] != 0;
      }
    }
    const Complex c(eps * unit(rng), eps * unit(rng));
    const FourierElement mode = FourierElement::monomial(theta, idx, c);
    x += mode;
    x += nc_adjoint(mode);
  }
  return x;
}

Assignment random_assignment(const ThetaMatrix& theta, std::uint64_t seed, const RandomAssignmentOptions& opts) {
  std::map<std::string, FourierElement> atoms;
  atoms.emplace("h", random_selfadjoint(theta, seed, opts.radius, opts.eps, opts.modes, 1.0));
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  if (opts.torsion) {
    for (int a = 1; a <= theta.dim(); ++a) {
      atoms.emplace("T" + std::to_string(a), random_selfadjoint(theta, rng(), opts.radius, 1.0, 1, unit(rng)));
    }
  }
  if (opts.include_x) atoms.emplace("X", random_selfadjoint(theta, rng(), opts.radius, 1.0, 1, unit(rng)));
  return make_assignment(theta, std::move(atoms), opts.tol);
}

// --- evaluation -------------------------------------------------------------

namespace {

std::string atom_name(const Letter& l) {
  switch (l.base) {
    case Base::H:
    case Base::Hinv: return "h";
    case Base::T: return "T" + std::to_string(l.axis);
    case Base::X: return "X";
  }
  return "?";
}

class LetterImages {
 public:
  explicit LetterImages(const Assignment& asg) : asg_(asg) {}

  const FourierElement& get(const Letter& l) {
    auto it = cache_.find(l);
    if (it != cache_.end()) return it->second;
    FourierElement v = base(l);
    for (int a = 1; a <= asg_.theta.dim(); ++a) {
      for (int k = 0; k < l.deriv[a - 1]; ++k) v = nc_derive(v, a);
    }
    return cache_.emplace(l, std::move(v)).first->second;
  }

  /// Prefix products are memoized: expanded words share long prefixes.
  const FourierElement& word(const Word& w) {
    if (w.empty()) {
      if (!unit_) unit_ = FourierElement::one(asg_.theta);
      return *unit_;
    }
    auto it = words_.find(w);
    if (it != words_.end()) return it->second;
    const Word prefix(w.begin(), w.end() - 1);
    FourierElement v = nc_multiply(word(prefix), get(w.back()));
    v.prune(kPrune);
    return words_.emplace(w, std::move(v)).first->second;
  }

  Complex trace_word(const Word& w) {
    if (w.empty()) return 1.0;
    const Word head(w.begin(), w.end() - 1);
    return nc_trace_product(word(head), get(w.back()));
  }

 private:
  FourierElement base(const Letter& l) const {
    if (l.is_hinv()) return asg_.h_inverse;
    auto it = asg_.atoms.find(atom_name(l));
    if (it == asg_.atoms.end()) throw std::invalid_argument("missing atom binding: " + atom_name(l));
    return it->second;
  }

  const Assignment& asg_;
  std::map<Letter, FourierElement> cache_;
  std::map<Word, FourierElement> words_;
  std::optional<FourierElement> unit_;
};

}  // namespace

FourierElement evaluate_poly(const NCPoly& p, const Assignment& asg) {
  LetterImages images(asg);
  FourierElement out(asg.theta);
  for (const auto& [w, c] : p.terms()) out += c.get_d() * images.word(w);
  return out;
}

Complex evaluate_trace_expression(const TraceExpression& e, const Assignment& asg) {
  LetterImages images(asg);
  Complex total{};
  for (const auto& [k, q] : e.terms()) total += Scalar(q, k.pi_power).to_double() * images.trace_word(k.word);
  return total;
}

namespace {

double xi_value(const XiMonomial& mono, const std::vector<double>& xi) {
  double norm2 = 0;
  double v = 1;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    norm2 += xi[a] * xi[a];
    v *= std::pow(xi[a], mono.alpha[a]);
  }
  if (mono.m < 0 && norm2 == 0) throw std::domain_error("xi = 0 with negative homogeneity");
  return v * std::pow(norm2, mono.m);
}

/// Truncated multivariate Taylor polynomial in (eps_1..eps_d).
class Jet {
 public:
  using Terms = std::map<MultiIndex, double>;
  Jet(int order, Terms t) : order_(order), terms_(std::move(t)) {}
  static Jet constant(int order, double c) { return Jet(order, {{MultiIndex{}, c}}); }
  static Jet shifted_var(int order, int axis, double value) {
    MultiIndex e{};
    e[axis] = 1;
    Terms t{{MultiIndex{}, value}};
    if (order >= 1) t[e] = 1.0;
    return Jet(order, std::move(t));
  }

  Jet operator*(const Jet& o) const {
    Terms t;
    for (const auto& [a, x] : terms_) {
      for (const auto& [b, y] : o.terms_) {
        MultiIndex s{};
        for (int i = 0; i < kMaxDim; ++i) s[i] = static_cast<std::uint8_t>(a[i] + b[i]);
        if (total_order(s) <= order_) t[s] += x * y;
      }
    }
    return Jet(order_, std::move(t));
  }
  Jet operator+(const Jet& o) const {
    Terms t = terms_;
    for (const auto& [a, x] : o.terms_) t[a] += x;
    return Jet(order_, std::move(t));
  }
  Jet scaled(double c) const {
    Terms t = terms_;
    for (auto& [a, x] : t) x *= c;
    return Jet(order_, std::move(t));
  }
  double constant_term() const {
    auto it = terms_.find(MultiIndex{});
    return it == terms_.end() ? 0.0 : it->second;
  }
  /// Coefficient of eps^gamma, i.e. (1/gamma!) d^gamma f.
  double coeff(const MultiIndex& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0.0 : it->second;
  }
  /// f^m for real m via the binomial series around the constant term.
  Jet power(int m) const {
    const double c = constant_term();
    Terms rest = terms_;
    rest.erase(MultiIndex{});
    const Jet x = Jet(order_, std::move(rest)).scaled(1.0 / c);
    Jet acc = constant(order_, 1.0);
    Jet xk = constant(order_, 1.0);
    double binom = 1;
    for (int k = 1; k <= order_; ++k) {
      binom *= static_cast<double>(m - k + 1) / k;
      xk = xk * x;
      acc = acc + xk.scaled(binom);
    }
    return acc.scaled(std::pow(c, m));
  }

 private:
  int order_;
  Terms terms_;
};

Jet monomial_jet(const XiMonomial& mono, const std::vector<double>& xi, int order) {
  const int d = static_cast<int>(xi.size());
  Jet v = Jet::constant(order, 1.0);
  Jet r = Jet::constant(order, 0.0);
  for (int a = 0; a < d; ++a) {
    const Jet var = Jet::shifted_var(order, a, xi[a]);
    for (int k = 0; k < mono.alpha[a]; ++k) v = v * var;
    r = r + var * var;
  }
  if (mono.m != 0) {
    if (r.constant_term() == 0) throw std::domain_error("xi = 0 with negative homogeneity");
    v = v * r.power(mono.m);
  }
  return v;
}

void gammas(int d, int n, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == d) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= n; ++v) {
    cur[pos] = static_cast<std::uint8_t>(v);
    gammas(d, n - v, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

FourierElement evaluate_symbol_at_xi(const Symbol& s, const Assignment& asg, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != s.dim()) throw std::invalid_argument("xi has wrong dimension");
  FourierElement out(asg.theta);
  LetterImages images(asg);
  for (const auto& [k, comp] : s.components()) {
    for (const auto& [mono, c] : comp) {
      const double v = xi_value(mono, xi);
      for (const auto& [w, q] : c.terms()) out += (q.get_d() * v) * images.word(w);
    }
  }
  return out;
}

FourierElement product_gamma_sum_at_xi(const Symbol& p, const Symbol& q, const Assignment& asg,
                                       const std::vector<double>& xi, int min_degree) {
  const int d = p.dim();
  if (static_cast<int>(xi.size()) != d || q.dim() != d) throw std::invalid_argument("dimension mismatch");
  FourierElement out(asg.theta);
  if (p.is_zero() || q.is_zero()) return out;
  const int order = p.max_degree() + q.max_degree() - min_degree;
  if (order < 0) return out;
  std::vector<MultiIndex> gs;
  MultiIndex cur{};
  gammas(d, order, 0, cur, gs);

  for (const auto& [kp, cp] : p.components()) {
    for (const auto& [mp, coef_p] : cp) {
      const Jet jet = monomial_jet(mp, xi, order);
      const FourierElement left = evaluate_poly(coef_p, asg);
      for (const auto& g : gs) {
        const int lvl = total_order(g);
        const double w = jet.coeff(g);
        if (w == 0) continue;
        for (const auto& [kq, cq] : q.components()) {
          if (kp + kq - lvl < min_degree) continue;
          for (const auto& [mq, coef_q] : cq) {
            FourierElement right = evaluate_poly(coef_q, asg);
            for (int a = 1; a <= d; ++a) {
              for (int k = 0; k < g[a - 1]; ++k) right = nc_derive(right, a);
            }
            out += (w * xi_value(mq, xi)) * nc_multiply(left, right);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace ncwres
