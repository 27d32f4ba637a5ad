#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "strictfeas/schur.hpp"

namespace {

struct Data {
    std::vector<Eigen::MatrixXd> terms;
    Eigen::MatrixXd w;
};

Data make_data(int n, int m) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    auto sym = [&] {
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = g(rng);
        return Eigen::MatrixXd((a + a.transpose()) / 2);
    };
    Data d;
    for (int k = 0; k < m; ++k) d.terms.push_back(sym());
    const Eigen::MatrixXd b = sym();
    d.w = b * b.transpose() + Eigen::MatrixXd::Identity(n, n);
    return d;
}

void BM_SchurSerial(benchmark::State& state) {
    const Data d = make_data(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(strictfeas::schur_complement_serial(d.terms, d.w));
}

void BM_SchurParallel(benchmark::State& state) {
    const Data d = make_data(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    state.counters["threads"] = strictfeas::kernel_threads();
    for (auto _ : state) benchmark::DoNotOptimize(strictfeas::schur_complement_parallel(d.terms, d.w));
}

}  // namespace

BENCHMARK(BM_SchurSerial)->Args({9, 9})->Args({30, 60})->Args({60, 200})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SchurParallel)->Args({9, 9})->Args({30, 60})->Args({60, 200})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
