#include <benchmark/benchmark.h>

#include "modflow/cuntz.hpp"
#include "modflow/fermion.hpp"
#include "modflow/special_functions.hpp"
#include "modflow/spectral_flow.hpp"
#include "modflow/summation.hpp"
#include "modflow/trace_table.hpp"

using namespace modflow;

namespace {

void BM_ZetaSeriesConstant(benchmark::State& state) {
  const auto s = BoundedSequence::constant(1.0);
  const double r = 0.5 + std::pow(2.0, -double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_series(s, r).value);
}
BENCHMARK(BM_ZetaSeriesConstant)->DenseRange(1, 12, 3);

void BM_EtaSeriesGeometric(benchmark::State& state) {
  const auto iso = tables::suq2_isometry(0.5, 2);
  const auto s = iso.range.phi_d_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(eta_series(s, 2, 0.51).value);
}
BENCHMARK(BM_EtaSeriesGeometric);

void BM_EtaTailIntegral(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_tail_integral(x, 0.51));
    x = x > 40.0 ? 0.0 : x + 1.0;
  }
}
BENCHMARK(BM_EtaTailIntegral);

void BM_ResidueRouteCuntz(benchmark::State& state) {
  cuntz::Model m(2);
  const auto v = cuntz::word_element(m, cuntz::Word{{1, 2}, {1}});
  const auto data = flow::extract_trace_data(m, v);
  for (auto _ : state) benchmark::DoNotOptimize(flow::sf_residue(data).flow.value);
}
BENCHMARK(BM_ResidueRouteCuntz);

void BM_ResidueRouteSuq2(benchmark::State& state) {
  const auto data = flow::from_isometry(tables::suq2_isometry(0.5, int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(flow::sf_residue(data).flow.value);
}
BENCHMARK(BM_ResidueRouteSuq2)->DenseRange(1, 4);

void BM_CuntzWordProduct(benchmark::State& state) {
  cuntz::Model m(4);
  const auto a = cuntz::word_element(m, cuntz::Word{{1, 2, 3, 4, 1, 2}, {2, 1}});
  const auto b = cuntz::word_element(m, cuntz::Word{{2, 1, 3}, {4, 3, 2, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(mul(m, a, b));
}
BENCHMARK(BM_CuntzWordProduct);

void BM_FermionClassify(benchmark::State& state) {
  fermion::Model m(int(state.range(0)), 0.25);
  auto v = fermion::generator_element(m, 1);
  v = add(m, v, adj(m, v));
  for (auto _ : state) benchmark::DoNotOptimize(classify_modular(m, v, 1e-10).is_modular);
}
BENCHMARK(BM_FermionClassify)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
