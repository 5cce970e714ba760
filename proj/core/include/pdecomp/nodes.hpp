#pragma once

#include <functional>
#include <vector>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/rational.hpp"

namespace pdecomp {

/// Any function that can report f(z), f'(z), ..., f^(count-1)(z).
using JetFunction = std::function<std::vector<Complex>(Complex z, int count)>;

/// Z(z) = (1, z, ..., z^{N-1}) as a 1 x N matrix.
ComplexMatrix row_Z(Complex z, int n);

/// k-th derivative of z -> Z(z) at z (raw derivatives, no 1/k! scaling).
ComplexMatrix row_Z_derivative(Complex z, int n, int k);

/// Confluent Vandermonde matrix: block j stacks Z(w_j), Z'(w_j), ...,
/// Z^(mu_j - 1)(w_j).
ComplexMatrix vandermonde(const NodeSet& nodes);

/// V^{-1}, computed once with pivot diagnostics.
ComplexMatrix vandermonde_inverse(const NodeSet& nodes);

/// C_w f: block j holds f(w_j), f'(w_j), ..., f^(mu_j - 1)(w_j).
ComplexVector confluent_eval(const Polynomial& f, const NodeSet& nodes);
/// Throws PoleAtNodeError when a node is a pole of f.
ComplexVector confluent_eval(const RationalFunction& f, const NodeSet& nodes);
ComplexVector confluent_eval(const JetFunction& f, const NodeSet& nodes);

/// Entrywise C_w of an r x s matrix function. The result is (N r) x s with
/// row (t r + a) holding the t-th confluent datum of row a of f.
ComplexMatrix confluent_eval(const RationalMatrix& f, const NodeSet& nodes);

/// Coefficients of the Hermite interpolant of degree < N matching the
/// confluent data `target`: V^{-1} target.
ComplexVector hermite_coefficients(const NodeSet& nodes, const ComplexVector& target);

}  // namespace pdecomp
