#pragma once

#include <cstddef>
#include <vector>

#include "pdecomp/node_set.hpp"

namespace pdecomp {

/// 1 / p(z) = sum over terms of coeff / (z - w_node)^order.
struct PartialFractionTable {
  struct Term {
    std::size_t node;
    int order;  // 1 <= order <= mu_node
    Complex coeff;
  };
  std::vector<Term> terms;

  Complex operator()(const NodeSet& nodes, Complex z) const;
};

/// Expansion of 1/p computed node by node from the Taylor series of
/// (z - w_j)^mu_j / p(z) at w_j. Terms are listed node by node, order 1 up to
/// mu_j.
PartialFractionTable partial_fractions_reciprocal(const NodeSet& nodes);

}  // namespace pdecomp
