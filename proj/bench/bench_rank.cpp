#include <benchmark/benchmark.h>

#include <random>

#include "hkfs/colength.hpp"
#include "hkfs/fp_poly.hpp"
#include "hkfs/rank_kernels.hpp"

using namespace hkfs;

namespace {

Gf2Matrix random_gf2(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Gf2Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t w = 0; w < m.words(); ++w) m.row(r)[w] = rng();
  }
  return m;
}

template <typename T>
ModpMatrix<T> random_modp(std::size_t n, std::uint32_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModpMatrix<T> m(n, n, p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = static_cast<T>(rng() % p);
  }
  return m;
}

void BM_Gf2(benchmark::State& state, Exec exec) {
  const Gf2Matrix m = random_gf2(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_gf2(m, exec));
}

void BM_Modp8(benchmark::State& state, Exec exec) {
  const auto m = random_modp<std::uint8_t>(static_cast<std::size_t>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rank_modp(m, exec));
}

void BM_Modp32(benchmark::State& state, Exec exec) {
  const auto m = random_modp<std::uint32_t>(static_cast<std::size_t>(state.range(0)), 65521, 3);
  for (auto _ : state) benchmark::DoNotOptimize(rank_modp(m, exec));
}

// Multiplication by f^(q/2 - 1) on F_p[x,y,z]/(x^q, y^q, z^q).
void BM_MultRank(benchmark::State& state, Exec exec) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  const FpPoly f = parse_fp_poly("z + x*y + y*z^2 + x^3", p).poly;
  const TruncatedAlgebra alg(p, 3, n);
  const FpPoly g = power_mod(f, alg.q() / 2 - 1, alg.q());
  state.counters["nonzero_terms"] = static_cast<double>(g.terms().size());
  for (auto _ : state) benchmark::DoNotOptimize(mult_rank(g, alg, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Gf2, serial, Exec::serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Gf2, parallel, Exec::parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Modp8, serial, Exec::serial)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Modp8, parallel, Exec::parallel)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Modp32, serial, Exec::serial)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Modp32, parallel, Exec::parallel)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MultRank, serial, Exec::serial)->Args({2, 4})->Args({2, 5})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MultRank, parallel, Exec::parallel)->Args({2, 4})->Args({2, 5})->Args({3, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
