#include "pdecomp/selfcheck.hpp"

#include <algorithm>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/kernels.hpp"
#include "pdecomp/lci.hpp"
#include "pdecomp/operators.hpp"
#include "pdecomp/random.hpp"
#include "pdecomp/realization.hpp"

namespace pdecomp {

namespace {

PropertyResult finish(std::string name, double residual, double tol, std::size_t cases) {
  return {std::move(name), residual, tol, cases, residual <= tol};
}

}  // namespace

std::vector<PropertyResult> run_selfcheck(const SelfCheckOptions& opts) {
  Rng rng(opts.seed);
  const double ts = opts.tolerance_scale;
  const auto cases = static_cast<std::size_t>(std::max(opts.cases, 1));
  std::vector<PropertyResult> out;

  {
    double worst = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
      // z near the nodes
      const NodeSet nodes = random_nodes(rng, {3, 3, 6, 1.5, 0.5});
      const Polynomial f = random_polynomial(rng, std::uniform_int_distribution<int>(0, 20)(rng));
      const Decomposition d = decompose_poly(f, nodes);
      for (int k = 0; k < 20; ++k) {
        const Complex z = nodes[rng() % nodes.size()].w + random_in_disk(rng, 0.25);
        worst = std::max(worst, std::abs(reconstruct_scalar(d, z) - f(z)) / (1.0 + std::abs(f(z))));
      }
    }
    out.push_back(finish("decomposition round trip", worst, 1e-8 * ts, cases));
  }

  {
    double worst = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
      const NodeSet nodes = random_nodes(rng, {3, 2, 5, 2.0, 0.5});
      const RationalFunction f = random_rational(rng, 6, std::uniform_int_distribution<int>(1, 6)(rng), nodes);
      const Realization real = realize(f, nodes);
      for (int k = 0; k < 30; ++k) {
        const Complex z = random_in_disk(rng, 2.5);
        if (std::abs(f.den(z)) < 1e-3) continue;
        const Complex want = f(z);
        worst = std::max(worst, std::abs(eval_realization(real, z)(0, 0) - want) / std::max(1.0, std::abs(want)));
      }
    }
    out.push_back(finish("realization fidelity", worst, 1e-7 * ts, cases));
  }

  {
    double worst = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
      const NodeSet nodes = random_nodes(rng, {3, 3, 4, 1.0, 0.5});
      ComplexVector a(nodes.degree());
      for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = random_in_disk(rng);
      const LCIProblem prob{nodes, a, random_in_disk(rng, 2.0)};
      std::vector<Polynomial> G;
      for (int j = 0; j < nodes.degree(); ++j) G.push_back(random_polynomial(rng, 3));
      worst = std::max(worst, verify_lci(lci_solve(prob, G), prob));
    }
    out.push_back(finish("LCI constraint", worst, 1e-8 * ts, cases));
  }

  {
    double worst = 0.0;
    std::size_t n_sets = 0;
    for (std::size_t t = 0; t < std::min<std::size_t>(cases, 5); ++t, ++n_sets) {
      const NodeSet nodes = random_nodes(rng, {3, 3, 5, 0.5, 0.5});
      worst = std::max(worst, verify_cuntz(nodes, 12).max_residual);
    }
    out.push_back(finish("Cuntz relations", worst, 1e-10 * ts, n_sets));
  }

  {
    double worst = 0.0;
    std::size_t done = 0;
    for (std::size_t t = 0; t < cases; ++t) {
      const NodeSet nodes = random_nodes(rng, {3, 1, 4, 1.5, 0.5});
      const RationalFunction f = random_rational(rng, 4, 2, nodes, 0.5);
      const Complex alpha = random_in_disk(rng, 0.5);
      const Complex beta = random_in_disk(rng, 0.5);
      try {
        worst = std::max(worst, verify_resolvent_identity(f, alpha, beta, nodes, 20).max_residual);
        ++done;
      } catch (const PreconditionError&) {
        // inadmissible (alpha, beta) draw; the property only covers admissible pairs
      }
    }
    out.push_back(finish("resolvent identity", worst, 1e-7 * ts, done));
  }

  {
    double worst = 0.0;
    double worst_psd = 0.0;
    for (std::size_t t = 0; t < cases; ++t) {
      const NodeSet nodes = random_nodes(rng, {2, 2, 4, 1.0, 0.5});
      FiniteRankKernel K;
      const int m = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int k = 0; k < m; ++k) K.C.push_back(random_polynomial(rng, 6));
      const KernelFactor F = factor_kernel(K, nodes);
      std::vector<Complex> grid;
      for (int k = 0; k < 20; ++k) grid.push_back(random_in_disk(rng, 1.5));
      worst = std::max(worst, verify_kernel_identity(K, F, grid).max_residual);
      worst_psd = std::max(worst_psd, psd_check(F, grid).report.max_residual);
    }
    out.push_back(finish("kernel factorization", worst, 1e-9 * ts, cases));
    out.push_back(finish("kernel Gram PSD", worst_psd, 1e-9 * ts, cases));
  }
  return out;
}

}  // namespace pdecomp
