#include <benchmark/benchmark.h>

#include "corrcs/generate.hpp"
#include "corrcs/geometry.hpp"
#include "corrcs/phase.hpp"
#include "corrcs/solver.hpp"

using namespace corrcs;

namespace {

SparseSignal bench_signal(Index n, Index s) {
  Substream rng(12345);
  return generate_sparse_signal(n, s, rng);
}

void BM_ProxL1(benchmark::State& state) {
  Substream rng(1);
  Vec q(state.range(0));
  for (Index i = 0; i < q.size(); ++i) q[i] = rng.next_gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(prox_l1(q, 0.3));
}
BENCHMARK(BM_ProxL1)->Arg(128)->Arg(1024);

void BM_ProxL1L1(benchmark::State& state) {
  Substream rng(2);
  Vec q(state.range(0)), phi(state.range(0));
  for (Index i = 0; i < q.size(); ++i) {
    q[i] = rng.next_gaussian();
    phi[i] = rng.next_gaussian();
  }
  for (auto _ : state) benchmark::DoNotOptimize(prox_l1_l1(q, 0.3, phi, 1.0));
}
BENCHMARK(BM_ProxL1L1)->Arg(128)->Arg(1024);

void BM_Solve(benchmark::State& state) {
  const Index n = state.range(0);
  const Index m = n / 2;
  Substream rng(3);
  const SparseSignal sig = bench_signal(n, n / 8);
  const Mat a = generate_bernoulli_matrix(m, n, rng);
  const PriorShift p = make_prior_case(PriorCase::B, sig, rng);
  SensingProblem problem{a, a * sig.values(), 0.0};
  const Regularizer reg = Regularizer::max_corr(p);
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem, reg));
}
BENCHMARK(BM_Solve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DistToNormalCone(benchmark::State& state) {
  const Index n = state.range(0);
  Substream rng(4);
  const SparseSignal sig = bench_signal(n, n / 8);
  const ConeDescriptor cone{sig, PriorShift{Vec::Zero(n)}};
  Vec g(n);
  for (Index i = 0; i < n; ++i) g[i] = rng.next_gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_normal_cone(g, cone));
}
BENCHMARK(BM_DistToNormalCone)->Arg(32)->Arg(64)->Arg(128);

void BM_RunTrial(benchmark::State& state) {
  PhaseProtocol protocol;
  protocol.n = static_cast<int>(state.range(0));
  protocol.case_tag = PriorCase::B;
  protocol.method = Method::max_corr;
  protocol.base_seed = 5;
  int trial = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_trial(protocol, protocol.n / 8, protocol.n / 2, trial++));
}
BENCHMARK(BM_RunTrial)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
