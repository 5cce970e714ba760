#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/operators.hpp"

namespace pdecomp {

/// K(z, w) = C(z) C(w)^* for a row C = (C_1, ..., C_m) of polynomials.
struct FiniteRankKernel {
  std::vector<Polynomial> C;

  std::size_t rank_bound() const noexcept { return C.size(); }
};

/// Factor through p: C(z) = Z(z) E(p(z)), so that
/// K(z, w) = Z(z) L(p(z), p(w)) Z(w)^* with L(lambda, mu) = E(lambda) E(mu)^*.
struct KernelFactor {
  explicit KernelFactor(NodeSet n) : nodes(std::move(n)) {}

  NodeSet nodes;
  std::size_t m = 0;
  std::vector<Polynomial> E;  // N x m, row-major

  const Polynomial& entry(std::size_t row, std::size_t col) const { return E.at(row * m + col); }
  ComplexMatrix E_at(Complex lambda) const;
  ComplexMatrix L(Complex lambda, Complex mu) const;
};

Complex kernel_eval(const FiniteRankKernel& K, Complex z, Complex w);

KernelFactor factor_kernel(const FiniteRankKernel& K, const NodeSet& nodes);

/// 20 points on the circle of radius 1.5 about the node centroid, dropping
/// any within 0.1 of a node.
std::vector<Complex> default_kernel_grid(const NodeSet& nodes);

/// max over grid pairs of |K(z,w) - Z(z) L(p(z),p(w)) Z(w)^*|, each scaled by
/// max(1, sqrt(K(z,z) K(w,w))).
OperatorReport verify_kernel_identity(const FiniteRankKernel& K, const KernelFactor& F,
                                      const std::vector<Complex>& grid, double tol = 1e-9);

struct PsdReport {
  OperatorReport report;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  std::size_t numerical_rank = 0;  // eigenvalues above 1e-9 * max
};

/// Spectrum of the block Gram matrix [L(p(z_i), p(z_j))]; passes when the
/// smallest eigenvalue is >= -tol * largest.
PsdReport psd_check(const KernelFactor& F, const std::vector<Complex>& grid, double tol = 1e-9);

}  // namespace pdecomp
