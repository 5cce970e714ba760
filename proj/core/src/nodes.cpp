#include "pdecomp/nodes.hpp"

#include <sstream>

#include "pdecomp/error.hpp"

namespace pdecomp {

ComplexMatrix row_Z(Complex z, int n) { return row_Z_derivative(z, n, 0); }

ComplexMatrix row_Z_derivative(Complex z, int n, int k) {
  if (n < 1) throw PreconditionError("row_Z: N must be >= 1");
  ComplexMatrix row = ComplexMatrix::Zero(1, n);
  for (int i = k; i < n; ++i) {
    double falling = 1.0;
    for (int t = 0; t < k; ++t) falling *= static_cast<double>(i - t);
    row(0, i) = falling * ipow(z, i - k);
  }
  return row;
}

ComplexMatrix vandermonde(const NodeSet& nodes) {
  const int n = nodes.degree();
  ComplexMatrix v(n, n);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (int k = 0; k < nodes[j].mu; ++k) {
      v.row(nodes.block_offset(j) + k) = row_Z_derivative(nodes[j].w, n, k);
    }
  }
  return v;
}

ComplexMatrix vandermonde_inverse(const NodeSet& nodes) {
  const int n = nodes.degree();
  return matrix_solve(vandermonde(nodes), ComplexMatrix::Identity(n, n));
}

ComplexVector confluent_eval(const Polynomial& f, const NodeSet& nodes) {
  ComplexVector out(nodes.degree());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto d = poly_derivatives_at(f, nodes[j].w, nodes[j].mu);
    for (int k = 0; k < nodes[j].mu; ++k) out(nodes.block_offset(j) + k) = d[static_cast<std::size_t>(k)];
  }
  return out;
}

namespace {

void require_no_pole(const Polynomial& den, const NodeSet& nodes) {
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (std::abs(den(nodes[j].w)) <= kPoleTolerance * den.norm()) {
      std::ostringstream msg;
      msg << "pole at node " << j << " (w = " << nodes[j].w << ")";
      throw PoleAtNodeError(msg.str());
    }
  }
}

}  // namespace

ComplexVector confluent_eval(const RationalFunction& f, const NodeSet& nodes) {
  require_no_pole(f.den, nodes);
  ComplexVector out(nodes.degree());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto d = f.derivatives_at(nodes[j].w, nodes[j].mu);
    for (int k = 0; k < nodes[j].mu; ++k) out(nodes.block_offset(j) + k) = d[static_cast<std::size_t>(k)];
  }
  return out;
}

ComplexVector confluent_eval(const JetFunction& f, const NodeSet& nodes) {
  ComplexVector out(nodes.degree());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto d = f(nodes[j].w, nodes[j].mu);
    if (static_cast<int>(d.size()) < nodes[j].mu) throw PreconditionError("confluent_eval: jet too short");
    for (int k = 0; k < nodes[j].mu; ++k) out(nodes.block_offset(j) + k) = d[static_cast<std::size_t>(k)];
  }
  return out;
}

ComplexMatrix confluent_eval(const RationalMatrix& f, const NodeSet& nodes) {
  require_no_pole(f.den(), nodes);
  const auto r = static_cast<Eigen::Index>(f.rows());
  ComplexMatrix out = ComplexMatrix::Zero(nodes.degree() * r, static_cast<Eigen::Index>(f.cols()));
  for (std::size_t a = 0; a < f.rows(); ++a) {
    for (std::size_t b = 0; b < f.cols(); ++b) {
      const ComplexVector c = confluent_eval(f.entry(a, b), nodes);
      for (Eigen::Index t = 0; t < c.size(); ++t) {
        out(t * r + static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = c(t);
      }
    }
  }
  return out;
}

ComplexVector hermite_coefficients(const NodeSet& nodes, const ComplexVector& target) {
  if (target.size() != nodes.degree()) throw PreconditionError("hermite_coefficients: data has the wrong length");
  return matrix_solve(vandermonde(nodes), target);
}

}  // namespace pdecomp
