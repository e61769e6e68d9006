#include <benchmark/benchmark.h>

#include <random>

#include "bldg/btree.hpp"
#include "bldg/chambers.hpp"
#include "bldg/moufang.hpp"
#include "bldg/projline.hpp"

using namespace bldg;

static void BM_CoxeterEnumerate(benchmark::State& state) {
  const auto m = CoxeterMatrix::parse("1 3 2 2\n3 1 4 2\n2 4 1 3\n2 2 3 1");  // F4
  for (auto _ : state) benchmark::DoNotOptimize(CoxeterSystem::build(m).order());
}
BENCHMARK(BM_CoxeterEnumerate)->Unit(benchmark::kMillisecond);

static void BM_PadicMul(benchmark::State& state) {
  const Field F = Field::parse("Qp:p=5,prec=12");
  std::mt19937_64 rng(1);
  const auto x = F.random_nonzero(rng, -2, 2);
  const auto y = F.random_nonzero(rng, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(F.mul(x, y));
}
BENCHMARK(BM_PadicMul);

static void BM_LaurentMul(benchmark::State& state) {
  const Field F = Field::parse("Laurent:q=9,prec=16");
  std::mt19937_64 rng(1);
  const auto x = F.random_nonzero(rng, -2, 2);
  const auto y = F.random_nonzero(rng, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(F.mul(x, y));
}
BENCHMARK(BM_LaurentMul);

static void BM_HuaRecover(benchmark::State& state, const char* spec) {
  const Field F = Field::parse(spec);
  const ProjectiveLine line(F);
  std::mt19937_64 rng(1);
  const auto x = F.random_nonzero(rng, 0, 1);
  const auto y = F.random_nonzero(rng, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(line.recover_multiplication(x, y));
}
BENCHMARK_CAPTURE(BM_HuaRecover, F7, "F7");
BENCHMARK_CAPTURE(BM_HuaRecover, Q5, "Q5");
BENCHMARK_CAPTURE(BM_HuaRecover, F3t, "Laurent:q=3,prec=8");

static void BM_BuildChambers(benchmark::State& state, const char* spec) {
  for (auto _ : state) benchmark::DoNotOptimize(ChamberComplex::build(spec).size());
}
BENCHMARK_CAPTURE(BM_BuildChambers, PG2_3, "PG2:q=3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildChambers, W_3, "W:q=3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildChambers, Aflags_3_2, "Aflags:n=3,q=2")->Unit(benchmark::kMillisecond);

static void BM_Apartments(benchmark::State& state) {
  const auto c = ChamberComplex::build("PG2:q=3");
  for (auto _ : state) benchmark::DoNotOptimize(c.apartments().size());
}
BENCHMARK(BM_Apartments)->Unit(benchmark::kMillisecond);

static void BM_RootGroup(benchmark::State& state) {
  const auto c = ChamberComplex::build("W:q=3");
  const LabeledApartment sigma(c, c.apartments().front());
  for (auto _ : state) benchmark::DoNotOptimize(root_group(c, sigma, 1).size());
}
BENCHMARK(BM_RootGroup)->Unit(benchmark::kMicrosecond);

static void BM_MoufangPlane(benchmark::State& state) {
  const auto c = ChamberComplex::build("PG2:q=3");
  for (auto _ : state) benchmark::DoNotOptimize(check_moufang(c).roots_checked);
}
BENCHMARK(BM_MoufangPlane)->Unit(benchmark::kMillisecond);

static void BM_TreeBall(benchmark::State& state) {
  const Field F = Field::parse("Q3");
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_tree_ball(F, r).vertices.size());
  state.SetComplexityN(ball_size(3, r));
}
BENCHMARK(BM_TreeBall)->DenseRange(2, 6, 2)->Complexity();

static void BM_Iwasawa(benchmark::State& state) {
  const Field F = Field::parse("Q5");
  std::mt19937_64 rng(1);
  const auto g = random_sl2(F, rng);
  for (auto _ : state) benchmark::DoNotOptimize(iwasawa_decompose(F, g));
}
BENCHMARK(BM_Iwasawa);

static void BM_BoundaryTransitivity(benchmark::State& state) {
  const Field F = Field::parse("Q5");
  for (auto _ : state) benchmark::DoNotOptimize(boundary_transitivity_check(F, 3).orbits);
}
BENCHMARK(BM_BoundaryTransitivity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
