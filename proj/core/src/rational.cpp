#include "pdecomp/rational.hpp"

#include <algorithm>

#include "pdecomp/error.hpp"

namespace pdecomp {

RationalFunction::RationalFunction(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
}

bool RationalFunction::is_pole(Complex z) const noexcept {
  return std::abs(den(z)) <= kPoleTolerance * den.norm();
}

Complex RationalFunction::operator()(Complex z) const {
  if (is_pole(z)) throw PreconditionError("rational function evaluated at a pole");
  return num(z) / den(z);
}

std::vector<Complex> RationalFunction::derivatives_at(Complex z0, int count) const {
  if (is_pole(z0)) throw PreconditionError("rational function differentiated at a pole");
  const std::vector<Complex> n = taylor_coefficients(num, z0, count);
  const std::vector<Complex> d = taylor_coefficients(den, z0, count);
  const std::vector<Complex> inv = series_reciprocal(d, count);
  std::vector<Complex> out(static_cast<std::size_t>(count), Complex{});
  double fact = 1.0;
  for (int k = 0; k < count; ++k) {
    if (k > 0) fact *= k;
    Complex acc{};
    for (int i = 0; i <= k; ++i) acc += n[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
    out[static_cast<std::size_t>(k)] = fact * acc;
  }
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> numerators,
                               Polynomial denominator)
    : rows_(rows), cols_(cols), num_(std::move(numerators)), den_(std::move(denominator)) {
  if (num_.size() != rows_ * cols_) throw PreconditionError("RationalMatrix: entry count does not match shape");
  if (den_.is_zero()) throw PreconditionError("RationalMatrix: zero denominator");
}

RationalMatrix::RationalMatrix(const RationalFunction& f) : RationalMatrix(1, 1, {f.num}, f.den) {}

RationalMatrix::RationalMatrix(const Polynomial& p) : RationalMatrix(1, 1, {p}) {}

int RationalMatrix::numerator_degree() const noexcept {
  int d = Polynomial::kZeroDegree;
  for (const Polynomial& p : num_) d = std::max(d, p.degree());
  return d;
}

bool RationalMatrix::is_pole(Complex z) const noexcept {
  return std::abs(den_(z)) <= kPoleTolerance * den_.norm();
}

ComplexMatrix RationalMatrix::operator()(Complex z) const {
  if (is_pole(z)) throw PreconditionError("rational matrix evaluated at a pole");
  const Complex d = den_(z);
  ComplexMatrix out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = num(i, j)(z) / d;
    }
  }
  return out;
}

}  // namespace pdecomp
