// Serial reference against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "translucent/acceptance.hpp"
#include "translucent/random.hpp"
#include "translucent/rationalizability.hpp"

namespace {

using namespace translucent;

void witness_enumeration(benchmark::State& state, Execution execution) {
  RandomGameOptions opts;
  opts.min_players = 3;
  opts.min_strategies = 4;
  const Game g = random_game(77, opts);
  for (auto _ : state) benchmark::DoNotOptimize(valid_witness_combinations(g, execution));
}

void criterion(benchmark::State& state, Execution execution) {
  AcceptanceOptions opts;
  opts.execution = execution;
  opts.structure_trials = 100;
  opts.game_trials = 100;
  opts.rationalizable_trials = 60;
  const int id = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_criterion(id, opts));
}

}  // namespace

BENCHMARK_CAPTURE(witness_enumeration, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(witness_enumeration, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(criterion, serial, Execution::kSerial)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(criterion, parallel, Execution::kParallel)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
