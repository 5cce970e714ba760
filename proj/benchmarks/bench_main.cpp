#include <benchmark/benchmark.h>

#include "pdecomp/decompose.hpp"
#include "pdecomp/kernels.hpp"
#include "pdecomp/lci.hpp"
#include "pdecomp/operators.hpp"
#include "pdecomp/random.hpp"
#include "pdecomp/realization.hpp"

using namespace pdecomp;

namespace {

NodeSet bench_nodes(int n) {
  std::vector<Node> nodes;
  for (int k = 0; k < n; ++k) nodes.push_back({std::polar(0.8, 2.0 * 3.141592653589793 * k / n), 1 + k % 2});
  return NodeSet(std::move(nodes));
}

void BM_DecomposePoly(benchmark::State& state) {
  Rng rng(1);
  const NodeSet nodes = bench_nodes(3);
  const Polynomial f = random_polynomial(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_poly(f, nodes));
}
BENCHMARK(BM_DecomposePoly)->Arg(8)->Arg(20)->Arg(64);

void BM_Realize(benchmark::State& state) {
  Rng rng(2);
  const NodeSet nodes = bench_nodes(3);
  const RationalFunction f = random_rational(rng, 6, static_cast<int>(state.range(0)), nodes);
  for (auto _ : state) benchmark::DoNotOptimize(realize(f, nodes));
}
BENCHMARK(BM_Realize)->Arg(1)->Arg(3)->Arg(6);

void BM_VerifyCuntz(benchmark::State& state) {
  const NodeSet nodes = bench_nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_cuntz(nodes, 12));
}
BENCHMARK(BM_VerifyCuntz)->Arg(1)->Arg(2)->Arg(3);

void BM_LciSolve(benchmark::State& state) {
  Rng rng(3);
  const NodeSet nodes = bench_nodes(2);
  ComplexVector a(nodes.degree());
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = random_in_disk(rng);
  const LCIProblem prob{nodes, a, 1.0};
  std::vector<Polynomial> G;
  for (int j = 0; j < nodes.degree(); ++j) G.push_back(random_polynomial(rng, 4));
  for (auto _ : state) benchmark::DoNotOptimize(lci_solve(prob, G));
}
BENCHMARK(BM_LciSolve);

void BM_KernelPsd(benchmark::State& state) {
  Rng rng(4);
  const NodeSet nodes = bench_nodes(2);
  FiniteRankKernel K;
  for (int k = 0; k < 4; ++k) K.C.push_back(random_polynomial(rng, 6));
  const KernelFactor F = factor_kernel(K, nodes);
  const std::vector<Complex> grid = default_kernel_grid(nodes);
  for (auto _ : state) benchmark::DoNotOptimize(psd_check(F, grid));
}
BENCHMARK(BM_KernelPsd);

}  // namespace
BENCHMARK_MAIN();
