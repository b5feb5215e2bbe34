#include "multiplane/catalog.hpp"
#include "multiplane/covering.hpp"

#include <benchmark/benchmark.h>

using namespace multiplane;

namespace {

void run(benchmark::State& state, const char* name, long n, Method m, bool parallel)
{
    const auto spec = builtin(name, n);
    IrregularityOptions opt;
    opt.sweep.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(irregularity(spec, m, opt).q);
    state.counters["characters"] = static_cast<double>(spec.grid.character_count().get_d());
}

void direct_serial(benchmark::State& s) { run(s, "ceva6", 6, Method::direct, false); }
void direct_parallel(benchmark::State& s) { run(s, "ceva6", 6, Method::direct, true); }
void faces_serial(benchmark::State& s) { run(s, "hesse-dual", 4, Method::faces, false); }
void faces_parallel(benchmark::State& s) { run(s, "hesse-dual", 4, Method::faces, true); }
void triple_serial(benchmark::State& s) { run(s, "ceva6", 9, Method::triple, false); }
void triple_parallel(benchmark::State& s) { run(s, "ceva6", 9, Method::triple, true); }

void sweep(benchmark::State& state, bool parallel)
{
    const auto g = builtin("hesse-pencil", 3).effective_grid();
    SweepOptions opt;
    opt.parallel = parallel;
    for (auto _ : state) {
        auto states = sweep_characters<long>(
            g.layout(), opt, [] { return 0L; },
            [](long& st, const std::vector<long>&, const std::vector<long>& X) { st += X[0]; });
        long total = 0;
        for (long s : states)
            total += s;
        benchmark::DoNotOptimize(total);
    }
}

void sweep_serial(benchmark::State& s) { sweep(s, false); }
void sweep_parallel(benchmark::State& s) { sweep(s, true); }

}  // namespace

BENCHMARK(sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(direct_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(direct_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(faces_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(faces_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(triple_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(triple_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
