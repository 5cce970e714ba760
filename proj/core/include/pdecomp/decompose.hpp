#pragma once

#include <cstddef>
#include <utility>
#include <optional>
#include <vector>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/rational.hpp"
#include "pdecomp/realization.hpp"

namespace pdecomp {

/// The generalized backward shift f -> (f - h) / p, where h = Z V^{-1} C_w f
/// is the Hermite interpolant of f at the nodes.
///
/// The division by p is carried out as a polynomial division whose
/// remainder has to be negligible (|r| <= tol * |f - h|); a visible remainder
/// means a pole at a node or a loss of accuracy and raises ToleranceError.
/// For a rational f = P / D the denominator is preserved: the result is
/// ((P - h D) / p) / D.
class BackwardShift {
 public:
  static constexpr double kDefaultTol = 1e-8;

  explicit BackwardShift(NodeSet nodes, double tol = kDefaultTol);

  const NodeSet& nodes() const noexcept { return nodes_; }
  const ComplexMatrix& vandermonde_inverse() const noexcept { return vinv_; }

  Polynomial operator()(const Polynomial& f) const;
  RationalFunction operator()(const RationalFunction& f) const;
  RationalMatrix operator()(const RationalMatrix& f) const;

  /// V^{-1} C_w f, i.e. F(0) of the decomposition of f.
  ComplexVector value_at_origin(const Polynomial& f) const;
  ComplexVector value_at_origin(const RationalFunction& f) const;

 private:
  /// (num - h den) / p for the numerator of num / den.
  Polynomial shift_numerator(const Polynomial& num, const Polynomial& den, const ComplexVector& h) const;

  NodeSet nodes_;
  ComplexMatrix vinv_;
  double tol_;
};

Polynomial shift_R0p(const Polynomial& f, const NodeSet& nodes);
RationalFunction shift_R0p(const RationalFunction& f, const NodeSet& nodes);
RationalMatrix shift_R0p(const RationalMatrix& f, const NodeSet& nodes);

enum class DecompositionKind { polynomial, rational };

/// f(z) = (Z(z) kron I_r) F(p(z)) with F either a matrix of polynomials in
/// lambda or a realization C (I - lambda A)^{-1} B.
struct Decomposition {
  explicit Decomposition(NodeSet n) : nodes(std::move(n)) {}

  NodeSet nodes;
  DecompositionKind kind = DecompositionKind::polynomial;
  std::size_t rows = 1;  // r
  std::size_t cols = 1;  // s
  /// (N r) x s polynomials in lambda, row-major; row (j r + a) is the
  /// coefficient of z^j for row a of f. Used when kind == polynomial.
  std::vector<Polynomial> F_poly;
  /// Used when kind == rational.
  std::optional<Realization> F_real;
  bool conditioning_warning = false;

  /// Scalar case: the N components F_1, ..., F_N.
  const Polynomial& component(std::size_t j) const { return F_poly.at(j); }
  const Polynomial& entry(std::size_t row, std::size_t col) const { return F_poly.at(row * cols + col); }
  /// F(lambda) as an (N r) x s matrix.
  ComplexMatrix F(Complex lambda) const;
  /// Largest component degree (polynomial kind only).
  int max_component_degree() const;
};

Decomposition decompose_poly(const Polynomial& f, const NodeSet& nodes);
/// Entrywise decomposition of a polynomial matrix (denominator must be constant).
Decomposition decompose_poly(const RationalMatrix& f, const NodeSet& nodes);

/// Rational decomposition backed by realize(f, nodes).
Decomposition decompose_rational(const RationalMatrix& f, const NodeSet& nodes,
                                 const RealizeOptions& opts = {});

/// (Z(z) kron I_r) F(p(z)) as an r x s matrix.
ComplexMatrix reconstruct(const Decomposition& d, Complex z);
/// Scalar case of reconstruct.
Complex reconstruct_scalar(const Decomposition& d, Complex z);

/// The classical backward shift (F(lambda) - F(0)) / lambda, componentwise.
std::vector<Polynomial> backward_shift_R0(const std::vector<Polynomial>& F);

/// Sum_j z^j F_j(p(z)): the polynomial whose decomposition is F.
Polynomial synthesize(const std::vector<Polynomial>& F, const NodeSet& nodes);

}  // namespace pdecomp
