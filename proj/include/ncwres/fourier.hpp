#pragma once

// Numerical model of the noncommutative torus on finitely supported Fourier
// series a = sum_beta a_beta U^beta, U^beta = U_1^beta_1 ... U_d^beta_d.
// Used to validate the exact symbolic layer.

#include "ncwres/symcalc.hpp"
#include "ncwres/trace.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncwres {

using Complex = std::complex<double>;
using FourierIndex = std::array<int, kMaxDim>;

/// Deformation matrix: U_j U_k = exp(2 pi i theta_jk) U_k U_j.
class ThetaMatrix {
 public:
  /// Row-major d x d entries; must be antisymmetric modulo integers.
  ThetaMatrix(int d, std::vector<double> entries);
  static ThetaMatrix zero(int d);
  /// Fills theta_jk for j < k from the list (row by row), theta_kj = -theta_jk.
  static ThetaMatrix from_upper(int d, const std::vector<double>& upper);

  int dim() const { return d_; }
  double operator()(int j, int k) const { return entries_[static_cast<std::size_t>(j * d_ + k)]; }
  const std::vector<double>& entries() const { return entries_; }

  /// U^a U^b = phase(a, b) U^{a+b}.
  Complex phase(const FourierIndex& a, const FourierIndex& b) const;
  /// (U^a)* = adjoint_phase(a) U^{-a}.
  Complex adjoint_phase(const FourierIndex& a) const;

  friend bool operator==(const ThetaMatrix&, const ThetaMatrix&) = default;

 private:
  int d_;
  std::vector<double> entries_;
};

class FourierElement {
 public:
  using Coeffs = std::map<FourierIndex, Complex>;

  explicit FourierElement(ThetaMatrix theta);
  static FourierElement one(const ThetaMatrix& theta) { return monomial(theta, FourierIndex{}, 1.0); }
  static FourierElement monomial(const ThetaMatrix& theta, const FourierIndex& idx, Complex c);

  const ThetaMatrix& theta() const { return theta_; }
  int dim() const { return theta_.dim(); }
  const Coeffs& coeffs() const { return coeffs_; }
  Complex coeff(const FourierIndex& idx) const;
  std::size_t support_size() const { return coeffs_.size(); }

  void add(const FourierIndex& idx, Complex c);
  /// Drops coefficients with |c| <= tol; returns the l1 mass removed.
  double prune(double tol);

  /// l1 norm of the coefficients (bounds the operator norm).
  double l1_norm() const;

  FourierElement& operator+=(const FourierElement& o);
  FourierElement& operator-=(const FourierElement& o);
  FourierElement& operator*=(Complex c);
  friend FourierElement operator+(FourierElement a, const FourierElement& b) { return a += b; }
  friend FourierElement operator-(FourierElement a, const FourierElement& b) { return a -= b; }
  friend FourierElement operator*(Complex c, FourierElement a) { return a *= c; }

 private:
  ThetaMatrix theta_;
  Coeffs coeffs_;
};

/// Twisted convolution; parallel over fixed chunks of x's support.
FourierElement nc_multiply(const FourierElement& x, const FourierElement& y);
FourierElement nc_multiply_serial(const FourierElement& x, const FourierElement& y);
Complex nc_trace(const FourierElement& x);
/// t(xy) without forming the product.
Complex nc_trace_product(const FourierElement& x, const FourierElement& y);
/// delta_a(U^alpha) = alpha_a U^alpha.
FourierElement nc_derive(const FourierElement& x, int axis);
FourierElement nc_adjoint(const FourierElement& x);

struct NeumannInverse {
  FourierElement inverse;
  /// Upper bound on the l1 error (series tail plus pruned mass).
  double bound = 0;
  int terms = 0;
};

/// x = lambda (1 + u) with lambda = Re x_0 > 0 and ||u||_1 < 1.
/// Throws std::domain_error("Neumann precondition violated") otherwise.
NeumannInverse nc_invert_neumann(const FourierElement& x, double tol);

/// Images of the atoms h, T1..Td, X plus a validated inverse of h.
struct Assignment {
  ThetaMatrix theta;
  std::map<std::string, FourierElement> atoms;
  FourierElement h_inverse;
  double tol = 1e-10;
  /// ||h h_inverse - 1||_1 as measured.
  double residual = 0;
};

/// Computes h^-1 by the Neumann series and records the residual.
Assignment make_assignment(const ThetaMatrix& theta, std::map<std::string, FourierElement> atoms, double tol);

struct RandomAssignmentOptions {
  int radius = 3;
  double eps = 0.1;
  int modes = 2;
  double tol = 1e-10;
  bool torsion = true;
  bool include_x = true;
};

/// Random self-adjoint h = 1 + eps * (...), T_a and X, band-limited.
Assignment random_assignment(const ThetaMatrix& theta, std::uint64_t seed, const RandomAssignmentOptions& opts = {});
/// Random self-adjoint element with `modes` Fourier modes of size eps.
FourierElement random_selfadjoint(const ThetaMatrix& theta, std::uint64_t seed, int radius, double eps, int modes,
                                  double constant);

/// Throws std::invalid_argument("missing atom binding: ...") for unbound letters.
FourierElement evaluate_poly(const NCPoly& p, const Assignment& asg);
Complex evaluate_trace_expression(const TraceExpression& e, const Assignment& asg);

/// Numeric value of the symbol at a fixed xi.
FourierElement evaluate_symbol_at_xi(const Symbol& s, const Assignment& asg, const std::vector<double>& xi);
/// Independent numeric composition at fixed xi: xi-derivatives from Taylor
/// jets, delta^gamma from nc_derive on the evaluated coefficients.
FourierElement product_gamma_sum_at_xi(const Symbol& p, const Symbol& q, const Assignment& asg,
                                       const std::vector<double>& xi, int min_degree);

/// l1 distance.
double l1_distance(const FourierElement& a, const FourierElement& b);

}  // namespace ncwres
