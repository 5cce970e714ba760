#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace pdecomp {

using Complex = std::complex<double>;

/// z^k for k >= 0 by repeated squaring; ipow(0, 0) == 1.
Complex ipow(Complex z, int k) noexcept;

/// Dense univariate polynomial with complex coefficients, stored in
/// ascending degree order.
///
/// The representation is canonical: trailing (highest-degree) coefficients
/// whose magnitude is at most kTrimTolerance times the largest coefficient
/// magnitude are dropped, so the leading entry is nonzero. The zero
/// polynomial has no coefficients and degree kZeroDegree.
class Polynomial {
 public:
  static constexpr int kZeroDegree = -1;
  static constexpr double kTrimTolerance = 1e-12;

  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial constant(Complex c);
  /// c * z^k
  static Polynomial monomial(int k, Complex c = 1.0);

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of z^k; zero outside the stored range.
  Complex coeff(int k) const noexcept;
  /// Largest coefficient magnitude.
  double norm() const noexcept;

  Complex operator()(Complex z) const noexcept;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(Complex c);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator-(Polynomial p) { return p *= -1.0; }
  friend Polynomial operator*(Polynomial p, Complex c) { return p *= c; }
  friend Polynomial operator*(Complex c, Polynomial p) { return p *= c; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

 private:
  void normalize();
  std::vector<Complex> coeffs_;
};

/// Horner evaluation. The zero polynomial evaluates to 0.
Complex poly_eval(const Polynomial& p, Complex z) noexcept;

/// order-th formal derivative.
Polynomial poly_derivative(const Polynomial& p, int order = 1);

/// Quotient and remainder of f by g with deg(r) < deg(g). Throws
/// PreconditionError when g is the zero polynomial.
std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& f, const Polynomial& g);

/// g(inner(z)).
Polynomial poly_compose(const Polynomial& outer, const Polynomial& inner);

/// Taylor coefficients of p around z0: the first `count` coefficients of
/// p(z0 + t) in powers of t.
std::vector<Complex> taylor_coefficients(const Polynomial& p, Complex z0, int count);

/// Values p(z0), p'(z0), ..., p^(count-1)(z0).
std::vector<Complex> poly_derivatives_at(const Polynomial& p, Complex z0, int count);

/// The vector Q(s) with (p(s) - p(z)) / (s - z) = sum_j z^j Q_j(s).
/// Q_j(s) = sum_{k=j+1}^{N} p_k s^{k-1-j}. Requires deg p >= 1.
std::vector<Polynomial> divided_difference_Q(const Polynomial& p);

/// Approximate equality of coefficient lists, relative to the larger norm.
bool approx_equal(const Polynomial& a, const Polynomial& b, double tol);

/// Truncated power-series reciprocal of a series with nonzero constant term.
std::vector<Complex> series_reciprocal(std::span<const Complex> series, int count);

}  // namespace pdecomp
