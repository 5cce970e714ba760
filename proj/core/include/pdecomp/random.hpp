#pragma once

#include <cstdint>
#include <random>

#include "pdecomp/node_set.hpp"
#include "pdecomp/rational.hpp"

namespace pdecomp {

/// Deterministic generators for randomized checks. Every draw goes through
/// the caller's engine, so a fixed seed reproduces the same instances.
using Rng = std::mt19937_64;

Complex random_in_disk(Rng& rng, double radius = 1.0);

struct NodeSetShape {
  int max_nodes = 3;
  int max_mu = 3;
  int max_degree = 6;      // cap on N
  double radius = 2.0;     // |w_j| <= radius
  double min_separation = 0.5;
};

NodeSet random_nodes(Rng& rng, const NodeSetShape& shape = {});

/// Exactly degree `deg` with coefficients in the unit disk.
Polynomial random_polynomial(Rng& rng, int deg);

/// Monic polynomial of degree `deg` whose roots are at distance >= clearance
/// from every node and inside the disk of radius `radius`.
Polynomial random_denominator(Rng& rng, int deg, const NodeSet& avoid, double clearance = 0.5, double radius = 3.0);

/// Scalar rational function with numerator degree <= num_deg and denominator
/// degree den_deg (>= 1), poles kept away from the nodes.
RationalFunction random_rational(Rng& rng, int num_deg, int den_deg, const NodeSet& avoid, double clearance = 0.5);

}  // namespace pdecomp
