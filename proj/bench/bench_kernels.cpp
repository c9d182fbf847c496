#include <benchmark/benchmark.h>

#include "tlscond/harness.hpp"
#include "tlscond/kernels.hpp"
#include "tlscond/rng.hpp"

using namespace tlscond;

namespace {

struct MixedInputs {
  Matrix A, Z1, Z2;
  Vector x, r;
};

Matrix random_matrix(Index m, Index n, Rng& rng) {
  Matrix M(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) M(i, j) = rng.normal();
  return M;
}

MixedInputs mixed_inputs(Index m) {
  Rng rng(1);
  const Index n = m / 2, k = n;
  return {random_matrix(m, n, rng), random_matrix(k, n, rng), random_matrix(k, m, rng),
          random_matrix(n, 1, rng), random_matrix(m, 1, rng)};
}

template <bool Parallel>
void BM_mixed_numerator(benchmark::State& state) {
  const MixedInputs in = mixed_inputs(state.range(0));
  for (auto _ : state) {
    Vector y = Parallel ? kernels::mixed_numerator(in.A, in.x, in.r, in.Z1, in.Z2)
                        : kernels::mixed_numerator_serial(in.A, in.x, in.r, in.Z1, in.Z2);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

template <bool Parallel>
void BM_basis_actions(benchmark::State& state) {
  const Index m = state.range(0), n = m - 16;
  const LinearStructure T = LinearStructure::toeplitz(m, n);
  Rng rng(2);
  const Vector x = random_matrix(n, 1, rng);
  const Vector r = random_matrix(m, 1, rng);
  for (auto _ : state) {
    kernels::BasisActions b = Parallel ? kernels::basis_actions(T.basis(), x, r)
                                       : kernels::basis_actions_serial(T.basis(), x, r);
    benchmark::DoNotOptimize(b.Sx.data());
  }
  state.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

void BM_structured_report_example3(benchmark::State& state) {
  const Example3 ex = make_example3();
  const TlsSolution sol = solve_tls(ex.problem);
  const Selection I = Selection::identity(ex.problem.n());
  for (auto _ : state) {
    const StructuredConditionReport s = structured_report(sol, I, ex.structure, ex.coordinates);
    benchmark::DoNotOptimize(s.kappa_s_inf);
  }
}

}  // namespace

BENCHMARK(BM_mixed_numerator<false>)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mixed_numerator<true>)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_basis_actions<false>)->Arg(200)->Arg(800)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_basis_actions<true>)->Arg(200)->Arg(800)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_structured_report_example3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
