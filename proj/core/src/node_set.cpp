#include "pdecomp/node_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdecomp/error.hpp"

namespace pdecomp {

NodeSet::NodeSet(std::vector<Node> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("NodeSet: at least one node is required");
  min_separation_ = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const Node& n = entries_[j];
    if (n.mu < 1) throw PreconditionError("NodeSet: multiplicities must be >= 1");
    if (!std::isfinite(n.w.real()) || !std::isfinite(n.w.imag())) {
      throw PreconditionError("NodeSet: node is not finite");
    }
    offsets_.push_back(degree_);
    degree_ += n.mu;
    for (std::size_t i = 0; i < j; ++i) {
      min_separation_ = std::min(min_separation_, std::abs(entries_[i].w - n.w));
    }
  }
  if (!(min_separation_ > 0.0)) throw PreconditionError("NodeSet: nodes must be pairwise distinct");

  p_ = Polynomial::constant(1.0);
  for (const Node& n : entries_) {
    const Polynomial factor{-n.w, 1.0};
    for (int k = 0; k < n.mu; ++k) p_ = p_ * factor;
  }
}

int NodeSet::max_multiplicity() const noexcept {
  int m = 0;
  for (const Node& n : entries_) m = std::max(m, n.mu);
  return m;
}

Polynomial poly_from_nodes(const NodeSet& nodes) { return nodes.polynomial(); }

}  // namespace pdecomp
