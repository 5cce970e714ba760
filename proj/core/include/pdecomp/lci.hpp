#pragma once

#include <vector>
#include <utility>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/nodes.hpp"
#include "pdecomp/rational.hpp"

namespace pdecomp {

/// One linear constraint  sum_j sum_k a_{j,k} f^(k)(w_j) = c  on the
/// confluent data of f. `a` is laid out in node-block order, like C_w f.
struct LCIProblem {
  NodeSet nodes;
  ComplexVector a;  // length N, not identically zero
  Complex c;

  /// Throws PreconditionError for a length mismatch or a == 0.
  void validate() const;
};

/// Parametrization of every solution:
///   f(z) = Z(z) [F0 + ((I - Pi) + p(z) Pi) G(p(z))]
/// with F0 = (vV)^* c / |vV|^2 and the rank-one projector
/// Pi = (vV)^* (vV) / |vV|^2.
struct LCISolution {
  explicit LCISolution(NodeSet n) : nodes(std::move(n)) {}

  NodeSet nodes;
  ComplexVector F0;
  ComplexMatrix projector;
  ComplexMatrix vV;  // 1 x N
  Polynomial particular;
};

LCISolution lci_prepare(const LCIProblem& prob);

/// The minimal-norm constant-F solution Z(z) F0 (degree < N).
Polynomial lci_particular(const LCIProblem& prob);

/// The member of the solution family selected by the polynomial parameter G
/// (N components in lambda).
Polynomial lci_solve(const LCIProblem& prob, const std::vector<Polynomial>& G);

/// Rational parameter G = G_num / G_den (common denominator, G_den(0) != 0).
/// The solution is returned over the denominator G_den(p(z)).
RationalFunction lci_solve(const LCIProblem& prob, const std::vector<Polynomial>& G_num, const Polynomial& G_den);

/// A parameter G with lci_solve(prob, G) == f for a polynomial solution f.
/// Throws PreconditionError when f does not satisfy the constraint to tol.
std::vector<Polynomial> lci_parameter_for(const LCIProblem& prob, const Polynomial& f, double tol = 1e-8);

/// |v C_w f - c|.
double verify_lci(const Polynomial& f, const LCIProblem& prob);
double verify_lci(const RationalFunction& f, const LCIProblem& prob);
double verify_lci(const JetFunction& f, const LCIProblem& prob);

}  // namespace pdecomp
