#include <benchmark/benchmark.h>

#include <random>

#include "xylab/analysis.hpp"
#include "xylab/concurrence.hpp"
#include "xylab/model.hpp"
#include "xylab/thermal.hpp"

using namespace xylab;

namespace {

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = gauss(gen);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cdouble x{gauss(gen), gauss(gen)};
            m(i, j) = x;
            m(j, i) = std::conj(x);
        }
    }
    return m;
}

void BM_hermitian_eig(benchmark::State& state) {
    const ComplexMatrix m = random_hermitian(state.range(0), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(m));
    }
}
BENCHMARK(BM_hermitian_eig)->Arg(16)->Arg(64)->Arg(256);

void BM_build_hamiltonian(benchmark::State& state) {
    const ModelParams p{static_cast<int>(state.range(0)), 0.5, 2.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_hamiltonian(p));
    }
}
BENCHMARK(BM_build_hamiltonian)->Arg(4)->Arg(6)->Arg(8);

void BM_thermal_c4(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_c4(0.3, 2.0, 1.0, 1.0));
    }
}
BENCHMARK(BM_thermal_c4);

void BM_six_qubit_ground_state(benchmark::State& state) {
    const ModelParams p{6, 0.5, 5.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(six_qubit_ground_state(p));
    }
}
BENCHMARK(BM_six_qubit_ground_state);

void BM_convex_roof_upper(benchmark::State& state) {
    const ModelParams p{4, 0.3, 2.0, 1.0};
    const ComplexMatrix chi = thermal_state(hermitian_eig(build_hamiltonian(p)), 1.0).chi;
    const AOperator a4 = AOperator::multipartite(4);
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(convex_roof_upper(chi, a4, trials, 11));
    }
}
BENCHMARK(BM_convex_roof_upper)->Arg(10)->Arg(100);

void BM_transition_fields(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(transition_fields(0.5));
    }
}
BENCHMARK(BM_transition_fields);

}  // namespace

BENCHMARK_MAIN();
