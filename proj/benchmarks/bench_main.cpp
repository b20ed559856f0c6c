#include "maxline/analysis.hpp"
#include "maxline/fixtures.hpp"
#include "maxline/maxline.hpp"
#include "maxline/simulation.hpp"
#include "maxline/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace maxline;

namespace {

void BM_Adjacency(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto positions = random_connected(n, RangeModel::square(), 1).positions();
    for (auto _ : state) benchmark::DoNotOptimize(is_connected(neighbors(positions, RangeModel::square())));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Adjacency)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Snapshot(benchmark::State& state)
{
    const auto config = random_connected(static_cast<std::size_t>(state.range(0)), RangeModel::square(), 2);
    RobotId id = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(take_snapshot(config, id));
        id = (id + 1) % config.size();
    }
}
BENCHMARK(BM_Snapshot)->Arg(16)->Arg(64)->Arg(256);

template <Algorithm A>
void BM_Compute(benchmark::State& state)
{
    const auto config = random_connected(32, RangeModel::square(), 3);
    std::vector<LocalSnapshot> snaps;
    for (RobotId id = 0; id < config.size(); ++id) snaps.push_back(take_snapshot(config, id));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute(A, snaps[i]));
        i = (i + 1) % snaps.size();
    }
}
BENCHMARK(BM_Compute<Algorithm::oblot>);
BENCHMARK(BM_Compute<Algorithm::lumi_fsync>);
BENCHMARK(BM_Compute<Algorithm::lumi_ssync>);
BENCHMARK(BM_Compute<Algorithm::gathering>);

void BM_GapOracle(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> gaps(n - 1, 0.5);
    std::vector<bool> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i % 3 != 0;
    const GapVector g(gaps);
    for (auto _ : state) benchmark::DoNotOptimize(phi_drop_bound_check(g, active, w_update_oracle(g, active)));
}
BENCHMARK(BM_GapOracle)->Arg(16)->Arg(256);

void BM_SimulateRun(benchmark::State& state, Algorithm algorithm, SchedulerSpec scheduler)
{
    const auto config = random_run(algorithm, scheduler, static_cast<std::size_t>(state.range(0)), 5, 0.01);
    long rounds = 0;
    for (auto _ : state) {
        const Trace trace = simulate(config);
        rounds += trace.summary.rounds;
    }
    state.counters["rounds/s"] = benchmark::Counter(static_cast<double>(rounds), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_SimulateRun, oblot_ssync, Algorithm::oblot, SchedulerSpec::random(0.5))->Arg(8)->Arg(16);
BENCHMARK_CAPTURE(BM_SimulateRun, lumi_fsync, Algorithm::lumi_fsync, SchedulerSpec::fsync())->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_SimulateRun, chain_ssync, Algorithm::chain_gtm, SchedulerSpec::random(0.5))->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
