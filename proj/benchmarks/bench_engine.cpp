#include <benchmark/benchmark.h>

#include "modanom/charforms.hpp"
#include "modanom/theta.hpp"
#include "modanom/verifier.hpp"

using namespace modanom;

namespace {

GeometrySpec spec_for(int d, int n8, bool eta = false) {
  GeometrySpec s;
  s.d = d;
  s.a = {2};
  s.b = {1};
  s.n8 = n8;
  s.has_eta = eta;
  return s;
}

void BM_ThetaNull(benchmark::State& state) {
  const int n8 = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta_null(ThetaKind::Theta2, n8));
}
BENCHMARK(BM_ThetaNull)->Arg(64)->Arg(160)->Arg(320);

void BM_JacobiCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_check(161));
}
BENCHMARK(BM_JacobiCheck);

void BM_QForm(benchmark::State& state) {
  const GeometrySpec spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(q_form(QForm::Q2, spec));
}
BENCHMARK(BM_QForm)->Args({1, 64})->Args({2, 64})->Args({2, 128})->Args({3, 64})->Unit(benchmark::kMillisecond);

void BM_Decomposition(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GeometrySpec spec = spec_for(d, 72);
  const FormQSeries q2 = q_form(QForm::Q2, spec).component(4 * d);
  const ModularPair basis = delta_eps(2, 72);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_gamma_basis(q2, d, basis));
}
BENCHMARK(BM_Decomposition)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Theorem31(benchmark::State& state) {
  const GeometrySpec spec = spec_for(static_cast<int>(state.range(0)), 72);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem_3_1(spec));
}
BENCHMARK(BM_Theorem31)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CSForm(benchmark::State& state) {
  const GeometrySpec spec = spec_for(static_cast<int>(state.range(0)), 64, true);
  for (auto _ : state) benchmark::DoNotOptimize(cs_form(CSForm::CSPhi1, spec));
}
BENCHMARK(BM_CSForm)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SRelation(benchmark::State& state) {
  const GeometrySpec spec = spec_for(2, 64);
  for (auto _ : state) benchmark::DoNotOptimize(check_s_relation(SPair::Q, spec));
}
BENCHMARK(BM_SRelation)->Unit(benchmark::kMillisecond);

void BM_AgwProbe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(agw_probe(3));
}
BENCHMARK(BM_AgwProbe)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
