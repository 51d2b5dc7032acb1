#include <benchmark/benchmark.h>

#include "achset/kakeya.hpp"
#include "achset/subsum_engine.hpp"
#include "achset/thresholds.hpp"

namespace {

using namespace achset;

void BM_EnumerateFloat(benchmark::State& state) {
  const Coefficients coeffs = Coefficients::from({4, 3, 2, 2});
  const FunctionSpec& id = builtin("identity");
  const std::size_t depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(coeffs, id, 0.13, depth));
  }
}
BENCHMARK(BM_EnumerateFloat)->Arg(12)->Arg(16)->Arg(20);

void BM_EnumerateExactGuthrieNymann(benchmark::State& state) {
  const ExactCoefficients coeffs =
      ExactCoefficients::from({Rational(3), Rational(2)});
  const std::size_t depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_enumerate(coeffs, Rational(1, 4), depth));
  }
}
BENCHMARK(BM_EnumerateExactGuthrieNymann)->Arg(12)->Arg(16)->Arg(20);

void BM_MinkowskiDense(benchmark::State& state) {
  const Rational half(1, 2);
  const std::size_t blocks = static_cast<std::size_t>(state.range(0));
  const auto left = exact_enumerate(ExactCoefficients::from({Rational(4), Rational(3)}), half,
                                    2 * blocks, 2 * blocks);
  const auto right = exact_enumerate(ExactCoefficients::from({Rational(2), Rational(2)}), half,
                                     2 * blocks, 2 * blocks);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minkowski_sum(left, right));
  }
}
BENCHMARK(BM_MinkowskiDense)->Arg(8)->Arg(12);

void BM_ApSearch(benchmark::State& state) {
  // Distinct prime-ish coefficients keep the alphabet near 2^m.
  const std::vector<double> primes{29, 23, 19, 17, 13, 11, 7, 5, 3, 2};
  std::vector<double> k(primes.begin(), primes.begin() + state.range(0));
  const SubsumAlphabet alphabet = subsum_alphabet(Coefficients::from(std::move(k)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ap_search(alphabet));
  }
  state.SetLabel("alphabet=" + std::to_string(alphabet.values.size()));
}
BENCHMARK(BM_ApSearch)->Arg(6)->Arg(8)->Arg(10);

void BM_ComputeThresholds(benchmark::State& state) {
  const Coefficients coeffs = Coefficients::from({4, 3, 2, 2});
  const PowerEnvelope env = builtin("identity").envelope;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_thresholds(coeffs, env));
  }
}
BENCHMARK(BM_ComputeThresholds);

void BM_KhmScan(benchmark::State& state) {
  const Coefficients coeffs = Coefficients::from({4, 3, 2, 2});
  const FunctionSpec& id = builtin("identity");
  for (auto _ : state) {
    benchmark::DoNotOptimize(khm_scan(coeffs, id, 0.13, 64));
  }
}
BENCHMARK(BM_KhmScan);

}  // namespace

BENCHMARK_MAIN();
