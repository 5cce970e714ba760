#pragma once

#include <vector>

#include "pdecomp/polynomial.hpp"

namespace pdecomp {

struct Node {
  Complex w;
  int mu = 1;
};

/// Distinct interpolation nodes w_j with multiplicities mu_j, kept in the
/// order the caller supplied. That order fixes every block layout downstream
/// (Vandermonde rows, confluent vectors, partial fractions).
class NodeSet {
 public:
  /// Separation below which results carry a conditioning warning.
  static constexpr double kClusterWarning = 1e-3;

  /// Throws PreconditionError for an empty list, mu < 1, or repeated nodes.
  explicit NodeSet(std::vector<Node> entries);

  const std::vector<Node>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Node& operator[](std::size_t j) const { return entries_[j]; }

  /// N = sum of multiplicities.
  int degree() const noexcept { return degree_; }
  int max_multiplicity() const noexcept;
  /// Smallest pairwise node distance; +inf for a single node.
  double min_separation() const noexcept { return min_separation_; }
  bool ill_conditioned() const noexcept { return min_separation_ < kClusterWarning; }
  /// Offset of node j's block inside length-N block vectors.
  int block_offset(std::size_t j) const { return offsets_[j]; }

  /// p(z) = prod_j (z - w_j)^mu_j, monic of degree N.
  const Polynomial& polynomial() const noexcept { return p_; }

 private:
  std::vector<Node> entries_;
  std::vector<int> offsets_;
  int degree_ = 0;
  double min_separation_ = 0.0;
  Polynomial p_;
};

/// The monic polynomial vanishing to order exactly mu_j at each w_j.
Polynomial poly_from_nodes(const NodeSet& nodes);

}  // namespace pdecomp
