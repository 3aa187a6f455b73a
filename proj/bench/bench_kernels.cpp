// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "qp/fforacle.hpp"
#include "qp/harness.hpp"
#include "qp/search.hpp"

namespace {

const qp::Pencil& pencil(std::size_t n) {
  static const qp::Pencil p4 = qp::generate_smooth_pencil(4, 9, 11);
  static const qp::Pencil p6 = qp::generate_smooth_pencil(6, 9, 11);
  return n == 4 ? p4 : p6;
}

qp::FFReduction reduction(std::size_t n, unsigned p, unsigned m) {
  return qp::reduce_pencil(pencil(n), qp::FiniteField(p, m));
}

void BM_PointSearch(benchmark::State& state) {
  const auto& p = pencil(4);
  for (auto _ : state) benchmark::DoNotOptimize(qp::point_search(p.f(), p.g(), state.range(0)));
}

void BM_PointSearchReference(benchmark::State& state) {
  const auto& p = pencil(4);
  for (auto _ : state) benchmark::DoNotOptimize(qp::point_search_reference(p.f(), p.g(), state.range(0)));
}

void BM_CountPoints(benchmark::State& state) {
  const auto red = reduction(4, 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qp::count_points(red.f, red.g));
}

void BM_CountPointsReference(benchmark::State& state) {
  const auto red = reduction(4, 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qp::count_points_reference(red.f, red.g));
}

void BM_Lines(benchmark::State& state) {
  const auto red = reduction(4, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qp::enumerate_r_planes(red.f, red.g, 1).count);
}

void BM_LinesReference(benchmark::State& state) {
  const auto red = reduction(4, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qp::enumerate_r_planes_reference(red.f, red.g, 1).count);
}

void BM_PlanesP6(benchmark::State& state) {
  const auto red = reduction(6, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(qp::enumerate_r_planes(red.f, red.g, 2).count);
}

// Campaign instances run in an OpenMP loop; range(0) is the thread count.
void BM_Campaign(benchmark::State& state) {
  qp::CampaignSpec spec;
  spec.theorem_id = "p4-quad-point";
  spec.samples = 8;
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qp::verify(spec).witnessed);
  omp_set_num_threads(omp_get_num_procs());
}

}  // namespace

BENCHMARK(BM_PointSearch)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointSearchReference)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountPoints)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountPointsReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lines)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinesReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanesP6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Campaign)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
