// bench_engine.cpp -- wall-clock benchmarks for the hot paths: Groebner
// bases, saturation, full plain resolutions, and the embedded pipeline.
//
// Inputs are fixed and small enough that a run finishes in seconds; the
// point is tracking relative regressions, not absolute throughput.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "desing/problem.hpp"
#include "desing/resolver.hpp"

using namespace desing;

namespace {

Ideal I(const RingPtr& r, const std::vector<std::string>& texts) {
  Ideal ideal(r, {});
  for (const auto& t : texts) ideal.gens.push_back(parse_polynomial(r, t));
  return ideal;
}

void BM_groebner_symmetric_cubics(benchmark::State& state) {
  auto r = make_ring({"x1", "x2", "x3"});
  Ideal in = I(r, {"x1^2 + x2*x3", "x2^2 + x1*x3", "x3^2 + x1*x2"});
  for (auto _ : state) benchmark::DoNotOptimize(groebner(in));
}
BENCHMARK(BM_groebner_symmetric_cubics);

void BM_saturate_embedded_line(benchmark::State& state) {
  auto r = make_ring({"x1", "x2", "x3"});
  Ideal in = I(r, {"x1*x2", "x1*x3^2"});
  Ideal by = I(r, {"x1"});
  for (auto _ : state) benchmark::DoNotOptimize(saturate(in, by));
}
BENCHMARK(BM_saturate_embedded_line);

void BM_resolve_fat_point(benchmark::State& state) {
  auto r = make_ring({"x1", "x2"});
  Ideal in = I(r, {"x1^2", "x2^3"});
  for (auto _ : state)
    benchmark::DoNotOptimize(resolve_basic_object(r, in, 1));
}
BENCHMARK(BM_resolve_fat_point);

void BM_principalize_axes(benchmark::State& state) {
  auto r = make_ring({"x1", "x2"});
  Ideal in = I(r, {"x1*x2"});
  for (auto _ : state) benchmark::DoNotOptimize(principalize(r, in));
}
BENCHMARK(BM_principalize_axes);

void BM_strong_nodal_curve(benchmark::State& state) {
  auto r = make_ring({"x1", "x2", "x3"});
  Ideal in = I(r, {"x1", "x2*x3 + x2^3 + x3^3"});
  for (auto _ : state) benchmark::DoNotOptimize(strong_desingularize(r, in));
}
BENCHMARK(BM_strong_nodal_curve);

}  // namespace

BENCHMARK_MAIN();
