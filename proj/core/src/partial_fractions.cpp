#include "pdecomp/partial_fractions.hpp"

namespace pdecomp {

Complex PartialFractionTable::operator()(const NodeSet& nodes, Complex z) const {
  Complex acc{};
  for (const Term& t : terms) acc += t.coeff / ipow(z - nodes[t.node].w, t.order);
  return acc;
}

PartialFractionTable partial_fractions_reciprocal(const NodeSet& nodes) {
  PartialFractionTable table;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Polynomial cofactor = Polynomial::constant(1.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i == j) continue;
      const Polynomial factor{-nodes[i].w, 1.0};
      for (int k = 0; k < nodes[i].mu; ++k) cofactor = cofactor * factor;
    }
    const int mu = nodes[j].mu;
    const auto local = taylor_coefficients(cofactor, nodes[j].w, mu);
    const auto inv = series_reciprocal(local, mu);
    for (int order = 1; order <= mu; ++order) {
      table.terms.push_back({j, order, inv[static_cast<std::size_t>(mu - order)]});
    }
  }
  return table;
}

}  // namespace pdecomp
