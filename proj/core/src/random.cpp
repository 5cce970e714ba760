#include "pdecomp/random.hpp"

#include <algorithm>
#include <cmath>

#include "pdecomp/error.hpp"

namespace pdecomp {

Complex random_in_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    const Complex z(unit(rng), unit(rng));
    if (std::abs(z) <= 1.0) return radius * z;
  }
}

NodeSet random_nodes(Rng& rng, const NodeSetShape& shape) {
  std::uniform_int_distribution<int> count(1, std::max(shape.max_nodes, 1));
  std::uniform_int_distribution<int> mult(1, std::max(shape.max_mu, 1));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = count(rng);
    std::vector<Node> nodes;
    int total = 0;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      const int mu = std::min(mult(rng), shape.max_degree - total);
      if (mu < 1) break;
      Complex w{};
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        w = random_in_disk(rng, shape.radius);
        placed = std::all_of(nodes.begin(), nodes.end(),
                             [&](const Node& o) { return std::abs(o.w - w) >= shape.min_separation; });
      }
      ok = placed;
      if (ok) {
        nodes.push_back({w, mu});
        total += mu;
      }
    }
    if (ok && !nodes.empty()) return NodeSet(std::move(nodes));
  }
  throw PreconditionError("random_nodes: could not place nodes with the requested separation");
}

Polynomial random_polynomial(Rng& rng, int deg) {
  std::vector<Complex> c;
  for (int k = 0; k <= deg; ++k) c.push_back(random_in_disk(rng));
  // Keep the leading coefficient away from zero so the degree is exact.
  if (deg >= 0 && std::abs(c.back()) < 0.1) c.back() = std::polar(0.5, std::arg(c.back()) + 0.1);
  return Polynomial(std::move(c));
}

Polynomial random_denominator(Rng& rng, int deg, const NodeSet& avoid, double clearance, double radius) {
  Polynomial d = Polynomial::constant(1.0);
  for (int k = 0; k < deg; ++k) {
    Complex a{};
    for (int tries = 0;; ++tries) {
      if (tries > 10000) throw PreconditionError("random_denominator: no admissible pole location");
      a = random_in_disk(rng, radius);
      bool clear = true;
      for (const Node& n : avoid.entries()) clear = clear && std::abs(n.w - a) >= clearance;
      if (clear) break;
    }
    d = d * Polynomial{-a, 1.0};
  }
  return d;
}

RationalFunction random_rational(Rng& rng, int num_deg, int den_deg, const NodeSet& avoid, double clearance) {
  std::uniform_int_distribution<int> nd(0, std::max(num_deg, 0));
  return {random_polynomial(rng, nd(rng)), random_denominator(rng, std::max(den_deg, 1), avoid, clearance)};
}

}  // namespace pdecomp
