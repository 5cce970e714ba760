#include "pdecomp/matrix.hpp"

#include <cmath>
#include <sstream>

#include "pdecomp/error.hpp"

namespace pdecomp {

double max_abs(const ComplexMatrix& m) noexcept {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double norm_inf(const ComplexMatrix& m) noexcept {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

ComplexMatrix matrix_solve(const ComplexMatrix& m, const ComplexMatrix& b, double pivot_tol) {
  if (m.rows() != m.cols()) throw PreconditionError("matrix_solve: matrix is not square");
  if (b.rows() != m.rows()) throw PreconditionError("matrix_solve: right-hand side has the wrong height");
  const Eigen::Index n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix x = b;
  const double scale = max_abs(m);
  const double threshold = pivot_tol * (scale > 0.0 ? scale : 1.0);

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best <= threshold) {
      std::ostringstream msg;
      msg << "matrix_solve: singular to tolerance at column " << k << " (pivot magnitude " << best
          << ", matrix scale " << scale << ")";
      throw SingularMatrixError(msg.str(), best);
    }
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      x.row(k).swap(x.row(piv));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      if (f == Complex{}) continue;
      a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
      x.row(i) -= f * x.row(k);
    }
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    for (Eigen::Index j = k + 1; j < n; ++j) x.row(k) -= a(k, j) * x.row(j);
    x.row(k) /= a(k, k);
  }
  return x;
}

ComplexVector IncrementalBasis::project(const ComplexVector& v, ComplexVector& proj) const {
  ComplexVector r = v;
  proj = ComplexVector::Zero(static_cast<Eigen::Index>(q_.size()));
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < q_.size(); ++k) {
      const Complex c = q_[k].dot(r);  // conjugates q_k
      proj(static_cast<Eigen::Index>(k)) += c;
      r -= c * q_[k];
    }
  }
  return r;
}

bool IncrementalBasis::try_add(const ComplexVector& v, double tol, double scale) {
  if (v.size() != dim_) throw PreconditionError("IncrementalBasis: vector has the wrong length");
  ComplexVector proj;
  const ComplexVector r = project(v, proj);
  const double rn = r.norm();
  if (!(rn > tol * std::max(v.norm(), scale))) return false;
  const auto k = static_cast<Eigen::Index>(q_.size());
  ComplexMatrix grown = ComplexMatrix::Zero(k + 1, k + 1);
  grown.topLeftCorner(k, k) = r_;
  grown.block(0, k, k, 1) = proj;
  grown(k, k) = rn;
  r_ = std::move(grown);
  q_.push_back(r / rn);
  return true;
}

IncrementalBasis::Coordinates IncrementalBasis::coordinates(const ComplexVector& v) const {
  if (v.size() != dim_) throw PreconditionError("IncrementalBasis: vector has the wrong length");
  ComplexVector proj;
  const ComplexVector r = project(v, proj);
  ComplexVector coords = proj;
  if (!q_.empty()) coords = r_.triangularView<Eigen::Upper>().solve(proj);
  return {coords, r.norm()};
}

IncrementalBasis::Coordinates IncrementalBasis::orthonormal_coordinates(const ComplexVector& v) const {
  if (v.size() != dim_) throw PreconditionError("IncrementalBasis: vector has the wrong length");
  ComplexVector proj;
  const ComplexVector r = project(v, proj);
  return {proj, r.norm()};
}

RankBasis rank_basis(const ComplexMatrix& columns, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("rank_basis: tolerance must be positive");
  IncrementalBasis basis(columns.rows());
  RankBasis out;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    if (basis.try_add(columns.col(j), tol)) out.selected.push_back(static_cast<std::size_t>(j));
  }
  out.coordinates = ComplexMatrix::Zero(static_cast<Eigen::Index>(out.selected.size()), columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    out.coordinates.col(j) = basis.coordinates(columns.col(j)).coords;
  }
  return out;
}

}  // namespace pdecomp
