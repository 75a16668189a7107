#include "divreg/dirac.hpp"
#include "divreg/fitter.hpp"
#include "divreg/qed_examples.hpp"
#include "divreg/quadrature.hpp"
#include "divreg/special_functions.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace divreg;

static void BM_Eigensystem(benchmark::State &state) {
  const Momentum3 q{0.3, -1.2, 0.7};
  for (auto _ : state)
    benchmark::DoNotOptimize(dirac::eigensystem(q, 1.0));
}
BENCHMARK(BM_Eigensystem);

static void BM_Ball4Radial(benchmark::State &state) {
  const double L = double(state.range(0));
  Ball4Options opt;
  opt.axis = FourVector{0.0, 0.0, 0.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball4_integrate(
        [](const FourVector &k) {
          const double d = k.norm_sq() + 1.0;
          return Complex(1.0 / (d * d));
        },
        L, opt));
  }
}
BENCHMARK(BM_Ball4Radial)->Arg(10)->Arg(1000);

static void BM_ShiftedLadder(benchmark::State &state) {
  const auto radii = geometric_grid(10.0, 1000.0, 9);
  const FourVector shift{0.5, 0.2, 0.0, 0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(shifted_denominator_ladder(shift, 1.0, radii));
}
BENCHMARK(BM_ShiftedLadder)->Unit(benchmark::kMillisecond);

static void BM_FitDefaultBasis(benchmark::State &state) {
  SampledIntegral s;
  for (double L : geometric_grid(10.0, 1e4, std::size_t(state.range(0)))) {
    const double ln = std::log(L);
    s.rungs.push_back({L, Complex(0.5 * L * L - ln, 4.0 * ln - 1.0 + 2.0 / L), 0.0, true});
  }
  const auto b = basis::default_set();
  for (auto _ : state)
    benchmark::DoNotOptimize(fit(s, b));
}
BENCHMARK(BM_FitDefaultBasis)->Arg(16)->Arg(64);

static void BM_LegendreQ(benchmark::State &state) {
  const int l = int(state.range(0));
  double x = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(legendre_q(l, x));
    x = x < 100.0 ? x * 1.01 : 1.5;
  }
}
BENCHMARK(BM_LegendreQ)->Arg(2)->Arg(30);
BENCHMARK_MAIN();
