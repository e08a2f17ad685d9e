#include <benchmark/benchmark.h>

#include <random>

#include "reflekt/constructions.hpp"
#include "reflekt/lp.hpp"
#include "reflekt/networks.hpp"
#include "reflekt/oracles.hpp"
#include "reflekt/verify.hpp"

using namespace reflekt;

namespace {

Vector iota_point(std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar(static_cast<long>(i + 1)));
  return v;
}

Vector random_objective(std::size_t n, std::uint64_t seed, Backend backend) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-9, 9);
  Vector c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(Scalar::fraction(d(rng), 1, backend));
  return c;
}

Vector pull_back(const ExtendedFormulation& ef, const Vector& c) {
  return ef.projection.linear().transpose() * std::span<const Scalar>(c);
}

// Optimize over the lifted permutahedron in original coordinates.
void BM_LpPermutahedron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ef = a_permutahedron_ef(HPolyhedron::point(iota_point(n)), batcher(n));
  const auto c = pull_back(ef, random_objective(n, 7, Backend::rational));
  for (auto _ : state) {
    auto r = lp::optimize(ef.q, c, lp::Sense::maximize);
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["vars"] = static_cast<double>(ef.q.dim());
}
BENCHMARK(BM_LpPermutahedron)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_LpMgonFloat(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto ef = mgon_ef(m);
  const auto c = pull_back(ef, {Scalar::from_double(0.3), Scalar::from_double(-0.7)});
  for (auto _ : state) {
    auto r = lp::optimize(ef.q, c, lp::Sense::maximize);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_LpMgonFloat)->RangeMultiplier(4)->Range(4, 1024)->Unit(benchmark::kMicrosecond);

void BM_LpParity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ef = parity_polytope_ef(n, true);
  const auto c = pull_back(ef, random_objective(n, 11, Backend::rational));
  for (auto _ : state) {
    auto r = lp::optimize(ef.q, c, lp::Sense::maximize);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_LpParity)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_BuildPermutahedron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = HPolyhedron::point(iota_point(n));
  const auto net = batcher(n);
  for (auto _ : state) benchmark::DoNotOptimize(a_permutahedron_ef(base, net));
}
BENCHMARK(BM_BuildPermutahedron)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_BuildHuffmanNlogn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = batcher(n);
  for (auto _ : state) benchmark::DoNotOptimize(huffman_ef_nlogn(n, net));
}
BENCHMARK(BM_BuildHuffmanNlogn)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_BuildMgon(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mgon_ef(m));
}
BENCHMARK(BM_BuildMgon)->RangeMultiplier(4)->Range(4, 1024)->Unit(benchmark::kMicrosecond);

void BM_Batcher(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(batcher(n));
}
BENCHMARK(BM_Batcher)->RangeMultiplier(4)->Range(16, 4096);

void BM_VerifyRecipe(benchmark::State& state) {
  const bool lifts = state.range(1) != 0;
  ConstructionRecipe r{RecipeName::a_permutahedron, {{"n", std::to_string(state.range(0))}}};
  VerifyOptions o;
  o.objectives = 10;
  o.chain_lifts = lifts;
  for (auto _ : state) {
    auto report = verify_recipe(r, o);
    if (!report.passed()) state.SkipWithError("verification failed");
  }
}
BENCHMARK(BM_VerifyRecipe)->ArgsProduct({{4, 5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
