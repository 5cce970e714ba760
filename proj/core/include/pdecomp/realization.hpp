#pragma once

#include <cstddef>
#include <utility>
#include <cstdint>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/rational.hpp"

namespace pdecomp {

/// f(z) = (Z(z) kron I_r) C (I - p(z) A)^{-1} B with constant A (m x m),
/// B (m x s) and C (rN x m).
struct Realization {
  explicit Realization(NodeSet n) : nodes(std::move(n)) {}

  NodeSet nodes;
  std::size_t rows = 1;  // r
  std::size_t cols = 1;  // s
  ComplexMatrix A;
  ComplexMatrix B;
  ComplexMatrix C;
  /// Max relative mismatch against the source function, measured on sample
  /// points when realize() built this object; 0 for hand-assembled values.
  double construction_residual = 0.0;
  bool conditioning_warning = false;

  Eigen::Index state_dim() const noexcept { return A.rows(); }

  /// F(lambda) = C (I - lambda A)^{-1} B, the (rN) x s decomposition vector.
  ComplexMatrix transfer(Complex lambda) const;
};

struct RealizeOptions {
  /// Relative independence threshold for the Krylov basis.
  double rank_tol = 1e-9;
  /// Iteration cap; 0 selects 4 * (numerator degree + denominator degree) + 8.
  int max_iterations = 0;
  /// Fidelity gate checked on sample points after construction.
  double verify_tol = 1e-7;
  int verify_points = 10;
  /// Reverses the order in which the columns of f seed the basis. Produces a
  /// different but similar realization.
  bool reverse_seed_order = false;
  std::uint64_t seed = 0x5eed;
};

/// Builds the realization by closing span{R^k f u} under the generalized
/// backward shift R, seeding with the columns of f in order and then their
/// shift images breadth-first. Throws PoleAtNodeError for a pole at a node and
/// ToleranceError when the closure does not terminate within the cap or the
/// result fails its fidelity check.
Realization realize(const RationalMatrix& f, const NodeSet& nodes, const RealizeOptions& opts = {});

/// (Z(z) kron I_r) C (I - p(z)A)^{-1} B. Throws SingularMatrixError when
/// I - p(z)A is singular.
ComplexMatrix eval_realization(const Realization& r, Complex z);

/// |A^m| <= tol * max(1, |A|^m) in the Frobenius norm; true when m = 0.
bool is_nilpotent(const Realization& r, double tol = 1e-8);

/// Compares transfer values at `trials` pseudo-random points (skipping points
/// where either realization is singular), relative tolerance `tol`.
bool transfer_equiv(const Realization& r1, const Realization& r2, int trials = 20, double tol = 1e-7,
                    std::uint64_t seed = 0xC0FFEE);

}  // namespace pdecomp
