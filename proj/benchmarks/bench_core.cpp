#include <benchmark/benchmark.h>

#include "nfr/catalog.hpp"
#include "nfr/galrep.hpp"
#include "nfr/heuristic.hpp"
#include "nfr/verify.hpp"

namespace {

const nfr::Catalog& catalog() {
  static const nfr::Catalog cat = nfr::Catalog::load(NFR_BENCH_DATA_DIR);
  return cat;
}

void BM_SeriesMul(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  const nfr::QSeries q = nfr::eisenstein(nfr::EisensteinKind::Q, P);
  const nfr::QSeries r = nfr::eisenstein(nfr::EisensteinKind::R, P);
  for (auto _ : state) benchmark::DoNotOptimize(q * r);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_EtaProduct(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  const nfr::EtaSpec spec{{{1, 4}, {2, 2}, {4, 4}}};
  for (auto _ : state) benchmark::DoNotOptimize(nfr::eta_product(spec, P));
}
BENCHMARK(BM_EtaProduct)->Arg(200)->Arg(1000);

void BM_ExpandCatalog(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nfr::expand_catalog(catalog(), P));
}
BENCHMARK(BM_ExpandCatalog)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_HeckeT2(benchmark::State& state) {
  const nfr::QSeries g = nfr::expand_form(catalog().form("Delta_22_3_plus_a"), 400);
  for (auto _ : state) benchmark::DoNotOptimize(nfr::hecke_tp(g, 2, 22));
}
BENCHMARK(BM_HeckeT2);

void BM_MatchFormToPoly(benchmark::State& state) {
  const auto& cat = catalog();
  const nfr::ProjPolyRecord* poly = nullptr;
  for (const auto& p : cat.polys().polys)
    if (p.label == "F_8d") poly = &p;
  const nfr::QSeries g = nfr::expand_form(cat.form("Delta_8_8_minus"), 201);
  for (auto _ : state) benchmark::DoNotOptimize(nfr::match_form_to_poly(g, 8, 8, *poly, cat.polys().table, 200));
}
BENCHMARK(BM_MatchFormToPoly)->Unit(benchmark::kMicrosecond);

void BM_CountQuadratics(benchmark::State& state) {
  const nfr::Rational w2(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nfr::count_quadratics(w2));
}
BENCHMARK(BM_CountQuadratics)->Arg(32)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
