#include "pdecomp/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "pdecomp/error.hpp"

namespace pdecomp {

Complex ipow(Complex z, int k) noexcept {
  Complex out{1.0};
  while (k > 0) {
    if (k & 1) out *= z;
    z *= z;
    k >>= 1;
  }
  return out;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial Polynomial::constant(Complex c) { return Polynomial(std::vector<Complex>{c}); }

Polynomial Polynomial::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1, Complex{});
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  double scale = 0.0;
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ToleranceError("polynomial coefficient is not finite");
    }
    scale = std::max(scale, std::abs(c));
  }
  if (scale == 0.0) {
    coeffs_.clear();
    return;
  }
  const double cut = kTrimTolerance * scale;
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::norm() const noexcept {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const noexcept { return poly_eval(*this, z); }

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex c) {
  for (Complex& a : coeffs_) a *= c;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Complex> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Complex{});
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Complex poly_eval(const Polynomial& p, Complex z) noexcept {
  const auto& c = p.coeffs();
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial poly_derivative(const Polynomial& p, int order) {
  if (order < 0) throw PreconditionError("derivative order must be non-negative");
  std::vector<Complex> c = p.coeffs();
  for (int step = 0; step < order && !c.empty(); ++step) {
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = static_cast<double>(k) * c[k];
    c.pop_back();
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("polynomial division by the zero polynomial");
  const int df = f.degree();
  const int dg = g.degree();
  if (df < dg) return {Polynomial{}, f};
  std::vector<Complex> rem = f.coeffs();
  std::vector<Complex> quot(static_cast<std::size_t>(df - dg) + 1, Complex{});
  const Complex lead = g.coeffs().back();
  for (int k = df - dg; k >= 0; --k) {
    const Complex q = rem[static_cast<std::size_t>(k + dg)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int i = 0; i <= dg; ++i) rem[static_cast<std::size_t>(k + i)] -= q * g.coeffs()[static_cast<std::size_t>(i)];
  }
  rem.resize(static_cast<std::size_t>(dg));
  // rem is normalized against its own scale; an (almost) exact division
  // therefore leaves tiny but nonzero coefficients the caller can inspect.
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial poly_compose(const Polynomial& outer, const Polynomial& inner) {
  Polynomial acc;
  const auto& c = outer.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inner + Polynomial::constant(*it);
  return acc;
}

std::vector<Complex> taylor_coefficients(const Polynomial& p, Complex z0, int count) {
  // Repeated synthetic division by (z - z0): the k-th remainder is the k-th
  // Taylor coefficient.
  std::vector<Complex> work = p.coeffs();
  std::vector<Complex> out(static_cast<std::size_t>(std::max(count, 0)), Complex{});
  for (int k = 0; k < count && !work.empty(); ++k) {
    for (std::size_t i = work.size() - 1; i > 0; --i) work[i - 1] += z0 * work[i];
    out[static_cast<std::size_t>(k)] = work.front();
    work.erase(work.begin());
  }
  return out;
}

std::vector<Complex> poly_derivatives_at(const Polynomial& p, Complex z0, int count) {
  std::vector<Complex> t = taylor_coefficients(p, z0, count);
  double fact = 1.0;
  for (int k = 0; k < count; ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] *= fact;
  }
  return t;
}

std::vector<Polynomial> divided_difference_Q(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw PreconditionError("divided_difference_Q requires a polynomial of degree >= 1");
  std::vector<Polynomial> q;
  q.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<Complex> c(static_cast<std::size_t>(n - j), Complex{});
    for (int k = j + 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1 - j)] = p.coeff(k);
    q.emplace_back(std::move(c));
  }
  return q;
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol) {
  const double scale = std::max({a.norm(), b.norm(), 1.0});
  const int top = std::max(a.degree(), b.degree());
  for (int k = 0; k <= top; ++k) {
    if (std::abs(a.coeff(k) - b.coeff(k)) > tol * scale) return false;
  }
  return true;
}

std::vector<Complex> series_reciprocal(std::span<const Complex> series, int count) {
  if (series.empty() || series[0] == Complex{}) {
    throw PreconditionError("series reciprocal requires a nonzero constant term");
  }
  std::vector<Complex> out(static_cast<std::size_t>(std::max(count, 0)), Complex{});
  for (int k = 0; k < count; ++k) {
    Complex acc = (k == 0) ? Complex{1.0} : Complex{};
    for (int i = 1; i <= k && i < static_cast<int>(series.size()); ++i) {
      acc -= series[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(k - i)];
    }
    out[static_cast<std::size_t>(k)] = acc / series[0];
  }
  return out;
}

}  // namespace pdecomp
