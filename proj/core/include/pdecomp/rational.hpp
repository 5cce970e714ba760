#pragma once

#include <cstddef>
#include <vector>

#include "pdecomp/matrix.hpp"
#include "pdecomp/polynomial.hpp"

namespace pdecomp {

/// Relative size of |den(z)| (against the denominator's coefficient norm)
/// at or below which z is treated as a pole.
inline constexpr double kPoleTolerance = 1e-10;

/// Scalar rational function num / den.
struct RationalFunction {
  Polynomial num;
  Polynomial den = Polynomial::constant(1.0);

  RationalFunction() = default;
  RationalFunction(Polynomial n) : num(std::move(n)) {}  // NOLINT: polynomials are rationals
  RationalFunction(Polynomial n, Polynomial d);

  Complex operator()(Complex z) const;
  bool is_pole(Complex z) const noexcept;
  /// f(z0), f'(z0), ..., f^(count-1)(z0). Throws PreconditionError at a pole.
  std::vector<Complex> derivatives_at(Complex z0, int count) const;
};

/// r x s matrix of polynomials over one common scalar denominator.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  /// numerators in row-major order, rows * cols entries.
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> numerators,
                 Polynomial denominator = Polynomial::constant(1.0));
  RationalMatrix(const RationalFunction& f);  // NOLINT: 1x1 embedding
  RationalMatrix(const Polynomial& p);        // NOLINT: 1x1 embedding

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Polynomial& num(std::size_t i, std::size_t j) const { return num_[i * cols_ + j]; }
  const std::vector<Polynomial>& numerators() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  /// Largest numerator degree (kZeroDegree when every entry is zero).
  int numerator_degree() const noexcept;
  RationalFunction entry(std::size_t i, std::size_t j) const { return {num(i, j), den_}; }

  ComplexMatrix operator()(Complex z) const;
  bool is_pole(Complex z) const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> num_;
  Polynomial den_ = Polynomial::constant(1.0);
};

}  // namespace pdecomp
