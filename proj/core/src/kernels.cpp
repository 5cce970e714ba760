#include "pdecomp/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/nodes.hpp"

namespace pdecomp {

ComplexMatrix KernelFactor::E_at(Complex lambda) const {
  const auto n = static_cast<Eigen::Index>(nodes.degree());
  ComplexMatrix out(n, static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) out(i, static_cast<Eigen::Index>(k)) = entry(static_cast<std::size_t>(i), k)(lambda);
  }
  return out;
}

ComplexMatrix KernelFactor::L(Complex lambda, Complex mu) const { return E_at(lambda) * E_at(mu).adjoint(); }

Complex kernel_eval(const FiniteRankKernel& K, Complex z, Complex w) {
  Complex acc{};
  for (const Polynomial& c : K.C) acc += c(z) * std::conj(c(w));
  return acc;
}

KernelFactor factor_kernel(const FiniteRankKernel& K, const NodeSet& nodes) {
  const std::size_t n = static_cast<std::size_t>(nodes.degree());
  KernelFactor out{nodes};
  out.m = K.C.size();
  out.E.assign(n * out.m, Polynomial{});
  for (std::size_t k = 0; k < out.m; ++k) {
    const Decomposition d = decompose_poly(K.C[k], nodes);
    for (std::size_t j = 0; j < n; ++j) out.E[j * out.m + k] = d.component(j);
  }
  return out;
}

std::vector<Complex> default_kernel_grid(const NodeSet& nodes) {
  Complex centre{};
  for (const Node& n : nodes.entries()) centre += n.w;
  centre /= static_cast<double>(nodes.size());
  std::vector<Complex> grid;
  for (int k = 0; k < 20; ++k) {
    const Complex z = centre + std::polar(1.5, 2.0 * std::numbers::pi * k / 20.0);
    bool near = false;
    for (const Node& n : nodes.entries()) near = near || std::abs(z - n.w) < 0.1;
    if (!near) grid.push_back(z);
  }
  return grid;
}

OperatorReport verify_kernel_identity(const FiniteRankKernel& K, const KernelFactor& F,
                                      const std::vector<Complex>& grid, double tol) {
  OperatorReport rep{"K(z,w) = Z(z) L(p(z),p(w)) Z(w)^*", 0.0, tol, 0, true};
  const int n = F.nodes.degree();
  const Polynomial& p = F.nodes.polynomial();
  for (Complex z : grid) {
    const ComplexMatrix Zz = row_Z(z, n);
    for (Complex w : grid) {
      const ComplexMatrix Zw = row_Z(w, n);
      const Complex factored = (Zz * F.L(p(z), p(w)) * Zw.adjoint())(0, 0);
      const Complex direct = kernel_eval(K, z, w);
      const double scale = std::max(1.0, std::sqrt(std::abs(kernel_eval(K, z, z)) * std::abs(kernel_eval(K, w, w))));
      rep.max_residual = std::max(rep.max_residual, std::abs(direct - factored) / scale);
      ++rep.samples;
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

PsdReport psd_check(const KernelFactor& F, const std::vector<Complex>& grid, double tol) {
  if (grid.empty()) throw PreconditionError("psd_check: grid must be nonempty");
  const auto n = static_cast<Eigen::Index>(F.nodes.degree());
  const auto g = static_cast<Eigen::Index>(grid.size());
  const Polynomial& p = F.nodes.polynomial();
  // Gram = W W^* with W stacking E(p(z_i)); forming it explicitly keeps the
  // check on L itself rather than on its factor.
  ComplexMatrix gram(n * g, n * g);
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = 0; j < g; ++j) {
      gram.block(i * n, j * n, n, n) = F.L(p(grid[static_cast<std::size_t>(i)]), p(grid[static_cast<std::size_t>(j)]));
    }
  }
  const ComplexMatrix herm = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ToleranceError("psd_check: eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  PsdReport out;
  out.min_eigenvalue = ev.minCoeff();
  out.max_eigenvalue = ev.maxCoeff();
  const double top = std::max(out.max_eigenvalue, 0.0);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > 1e-9 * top && ev(k) > 0.0) ++out.numerical_rank;
  }
  out.report = {"Gram[L(p(z_i), p(z_j))] >= 0", top > 0.0 ? std::max(0.0, -out.min_eigenvalue / top) : 0.0, tol,
                grid.size(), out.min_eigenvalue >= -tol * top};
  return out;
}

}  // namespace pdecomp
