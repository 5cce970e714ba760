#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "pdecomp/polynomial.hpp"

namespace pdecomp {

/// Dense row/column complex matrix. Eigen storage; the library's own solvers
/// sit on top of it where pivot diagnostics or deterministic basis selection
/// matter.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m) noexcept;
/// Max absolute row sum.
double norm_inf(const ComplexMatrix& m) noexcept;

/// Solves M X = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError (with the offending pivot magnitude) when a
/// pivot falls to or below pivot_tol * max|M|, and PreconditionError when M is
/// not square or the row counts disagree.
ComplexMatrix matrix_solve(const ComplexMatrix& m, const ComplexMatrix& b, double pivot_tol = 1e-13);

/// Growing orthonormal basis (classical Gram-Schmidt with one
/// reorthogonalization pass) that remembers which input vectors were
/// accepted, so that coordinates can be reported in terms of those inputs.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return q_.size(); }

  /// Accepts v when its distance to the current span exceeds
  /// tol * max(|v|, scale). Returns whether v was accepted.
  bool try_add(const ComplexVector& v, double tol, double scale = 0.0);

  struct Coordinates {
    ComplexVector coords;  // in terms of the accepted input vectors
    double residual;       // |v - sum coords_i * accepted_i|
  };
  Coordinates coordinates(const ComplexVector& v) const;
  /// Coordinates with respect to the orthonormal vectors q_0, q_1, ...
  Coordinates orthonormal_coordinates(const ComplexVector& v) const;
  const ComplexVector& q(std::size_t k) const { return q_.at(k); }

 private:
  ComplexVector project(const ComplexVector& v, ComplexVector& proj) const;

  Eigen::Index dim_;
  std::vector<ComplexVector> q_;
  ComplexMatrix r_;  // accepted_i = sum_k q_k r_(k, i); upper triangular
};

struct RankBasis {
  std::vector<std::size_t> selected;  // indices into the input columns
  ComplexMatrix coordinates;          // selected.size() x input columns
};

/// Greedy selection of a maximal independent subset of the columns of
/// `columns`, scanning them in order. A column joins the basis when its
/// residual against the columns already chosen exceeds tol times its norm.
/// Every input column is then expressed in the chosen basis.
RankBasis rank_basis(const ComplexMatrix& columns, double tol = 1e-9);

}  // namespace pdecomp
