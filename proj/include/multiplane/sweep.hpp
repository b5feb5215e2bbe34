#pragma once

// Enumeration of all characters of a finite abelian group (Z/n_1 x ... x Z/n_s)
// with their integer images X in (Z/N)^t, N = lcm(n_j). Parallel over disjoint
// ranges of the slow digits; each worker owns a state object.

#include "multiplane/exactmath.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace multiplane {

struct SweepOptions {
    bool parallel = true;
    int threads = 0;  // 0: OpenMP default
};

struct SweepLayout {
    std::vector<long> orders;
    std::size_t curves = 0;
    long modulus = 1;                      // N
    std::vector<std::vector<long>> step;   // step[j][i]: change of X_i when a_j grows by one
    std::size_t fast_digits = 0;           // digits enumerated inside one chunk
    std::uint64_t chunks = 1;
};

/// Splits the digits so that there are enough chunks to balance the workers.
SweepLayout make_sweep_layout(const std::vector<long>& orders, const std::vector<std::vector<long>>& step,
                              long modulus, std::size_t curves, std::uint64_t min_chunks);

/// visit(state, a, X) for every character; returns one state per worker.
template <typename State, typename Make, typename Visit>
std::vector<State> sweep_characters(const SweepLayout& lay, const SweepOptions& opt, Make make, Visit visit)
{
    const std::size_t s = lay.orders.size();
    const std::size_t t = lay.curves;
    const long N = lay.modulus;
    int workers = 1;
    if (opt.parallel)
        workers = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    std::vector<State> states;
    states.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        states.push_back(make());

    auto run_chunk = [&](std::uint64_t chunk, State& st) {
        std::vector<long> a(s, 0), X(t, 0);
        std::uint64_t rest = chunk;
        for (std::size_t j = lay.fast_digits; j < s; ++j) {
            a[j] = static_cast<long>(rest % static_cast<std::uint64_t>(lay.orders[j]));
            rest /= static_cast<std::uint64_t>(lay.orders[j]);
            for (std::size_t i = 0; i < t; ++i)
                X[i] = (X[i] + a[j] * lay.step[j][i]) % N;
        }
        while (true) {
            visit(st, static_cast<const std::vector<long>&>(a), static_cast<const std::vector<long>&>(X));
            std::size_t j = 0;
            while (j < lay.fast_digits) {
                for (std::size_t i = 0; i < t; ++i) {
                    X[i] += lay.step[j][i];
                    if (X[i] >= N)
                        X[i] -= N;
                }
                if (++a[j] < lay.orders[j])
                    break;
                a[j] = 0;
                ++j;
            }
            if (j == lay.fast_digits)
                return;
        }
    };

    const auto chunks = static_cast<std::int64_t>(lay.chunks);
    if (workers > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (std::int64_t c = 0; c < chunks; ++c)
            run_chunk(static_cast<std::uint64_t>(c), states[static_cast<std::size_t>(omp_get_thread_num())]);
    } else {
        for (std::int64_t c = 0; c < chunks; ++c)
            run_chunk(static_cast<std::uint64_t>(c), states[0]);
    }
    return states;
}

}  // namespace multiplane
