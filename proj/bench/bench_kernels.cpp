// Serial reference vs OpenMP kernel for the three parallel stages.

#include <benchmark/benchmark.h>

#include <random>

#include "scandiag/field_reduce.hpp"
#include "scandiag/proxy_eval.hpp"
#include "scandiag/ranking.hpp"

using namespace scandiag;

namespace {

LabelSet random_labels(int m) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> mises(100.0, 500.0);
    std::uniform_real_distribution<double> u3(0.1, 2.0);
    std::uniform_real_distribution<double> peeq(90.0, 100.0);
    LabelSet s;
    for (int i = 0; i < m; ++i) s.add("s" + std::to_string(i), LabelVector{mises(rng), u3(rng), peeq(rng)});
    return s;
}

std::vector<NodeFieldTable> random_tables(int count, int rows) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> v(0.0, 1.0);
    std::vector<NodeFieldTable> out(static_cast<std::size_t>(count));
    for (auto& t : out) {
        for (int i = 0; i < rows; ++i) t.rows.push_back(NodeRow{i, 500.0 * v(rng), v(rng), 0.02 * v(rng)});
    }
    return out;
}

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
    const LabelSet labels = random_labels(static_cast<int>(state.range(0)));
    const auto grid = simplex_grid(0.02);
    for (auto _ : state) {
        auto r = Parallel ? robustness_sweep(labels, grid) : robustness_sweep_serial(labels, grid);
        benchmark::DoNotOptimize(r.rank_range.data());
    }
}

template <bool Parallel>
void BM_ProxyMatrix(benchmark::State& state) {
    const TrackLayout layout{static_cast<int>(state.range(0)), 1.0};
    const auto orders = generate_all(layout);
    for (auto _ : state) {
        auto m = Parallel ? proxy_matrix(orders, layout) : proxy_matrix_serial(orders, layout);
        benchmark::DoNotOptimize(m.rows.data());
    }
}

template <bool Parallel>
void BM_Reduce(benchmark::State& state) {
    const auto tables = random_tables(10, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto l = Parallel ? extract_labels_batch(tables) : extract_labels_batch_serial(tables);
        benchmark::DoNotOptimize(l.data());
    }
}

} // namespace

BENCHMARK(BM_Sweep<false>)->Arg(10)->Arg(100);
BENCHMARK(BM_Sweep<true>)->Arg(10)->Arg(100);
BENCHMARK(BM_ProxyMatrix<false>)->Arg(32)->Arg(256);
BENCHMARK(BM_ProxyMatrix<true>)->Arg(32)->Arg(256);
BENCHMARK(BM_Reduce<false>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_Reduce<true>)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
