#ifndef CAFF_JETS_HPP
#define CAFF_JETS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "caff/errors.hpp"

namespace caff {

// Truncation order of every jet. Fixed: the pipeline needs four
// derivative orders of the immersion (x -> h -> Christoffel -> K -> dK)
// and nothing more.
inline constexpr int kJetOrder = 4;
inline constexpr int kMaxVars = 8;

// Exponent tuple of a monomial u1^a1 ... un^an with a1+...+an <= 4.
using MultiIndex = std::vector<int>;

int multi_index_degree(const MultiIndex& alpha);
double multi_index_factorial(const MultiIndex& alpha);

// Dense coefficient layout for jets in `nvars` variables: one slot per
// multi-index of degree <= 4, graded-lexicographic order. Shared and
// cached per nvars; also carries the product/derivative index tables
// used by Jet arithmetic.
class JetLayout {
 public:
  static const JetLayout& get(int nvars);

  int nvars() const { return nvars_; }
  int size() const { return static_cast<int>(alpha_.size()); }
  const std::array<std::uint8_t, kMaxVars>& exponents(int slot) const {
    return alpha_[slot];
  }
  int degree(int slot) const { return degree_[slot]; }
  double factorial(int slot) const { return factorial_[slot]; }

  // Slot of a multi-index, or -1 when degree exceeds the order.
  int slot(const MultiIndex& alpha) const;

  // Slot of alpha_i + alpha_j, or -1 when the sum has degree > 4.
  int product_slot(int i, int j) const { return prod_[i * size() + j]; }

  // Slot of alpha - e_var, or -1 when alpha_var == 0.
  int lower_slot(int slot, int var) const { return down_[var][slot]; }

 private:
  explicit JetLayout(int nvars);

  int nvars_;
  std::vector<std::array<std::uint8_t, kMaxVars>> alpha_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<int> prod_;
  std::array<std::vector<int>, kMaxVars> down_;
};

// Truncated multivariate Taylor expansion of a scalar function at a
// point: coefficient of multi-index alpha is d^alpha f / alpha!.
// Immutable in practice: every operation returns a fresh jet, so values
// can be shared across threads freely.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int nvars, double constant = 0.0);

  // Jet of the chart variable `index` at `value` (constant term = value,
  // unit linear term, nothing else).
  static Jet variable(int index, double value, int nvars);

  int nvars() const { return nvars_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const JetLayout& layout() const { return JetLayout::get(nvars_); }

  double operator[](int slot) const { return coeffs_[slot]; }
  double& operator[](int slot) { return coeffs_[slot]; }

  double value() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double value);

  // Raw partial derivative d^alpha f = alpha! * coeff(alpha).
  double partial(const MultiIndex& alpha) const;

  bool all_finite() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(double a, const Jet& b);

 private:
  int nvars_ = 0;
  std::vector<double> coeffs_;
};

// Reciprocal 1/a; throws SingularJetError when the constant term is 0.
Jet reciprocal(const Jet& a);

// Elementary functions, composed with the truncated series of the
// argument. Domain checks test the constant term only (a jet is a local
// germ; higher coefficients cannot leave the domain).
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
// Integer r: repeated multiplication (any base, nonzero for r < 0).
// Fractional r: binomial series, constant term must be positive.
Jet pow(const Jet& a, double r);

// Partial derivative: an order-3 jet stored in order-4 shape (the
// degree-4 coefficients of the result are zero, not the true ones).
Jet derivative(const Jet& a, int var);

// Solve A x = b in jet arithmetic. A is m x m row-major, B holds nrhs
// columns stored row-major (B[r*nrhs + c]). Gaussian elimination with
// partial pivoting on constant terms; a pivot below 1e-12 times the max
// constant-term magnitude of its row raises SingularSystemError.
std::vector<Jet> jet_solve(std::vector<Jet> A, std::vector<Jet> B, int m,
                           int nrhs);
std::vector<Jet> jet_solve(const std::vector<Jet>& A,
                           const std::vector<Jet>& b);

}  // namespace caff

#endif  // CAFF_JETS_HPP
