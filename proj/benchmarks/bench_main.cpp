#include <benchmark/benchmark.h>

#include "blockent/blocks.hpp"
#include "blockent/measures.hpp"
#include "blockent/rng.hpp"
#include "blockent/roof.hpp"
#include "blockent/thermal.hpp"

namespace {

using namespace blockent;

ComplexMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    return ComplexMatrix((g + g.adjoint()) / 2.0);
}

ComplexMatrix random_density(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return ComplexMatrix(std::move(rho));
}

void bench_eig_hermitian(benchmark::State& state) {
    const ComplexMatrix m = random_hermitian(state.range(0), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(m));
    }
}
BENCHMARK(bench_eig_hermitian)->Arg(4)->Arg(16)->Arg(64);

void bench_expm(benchmark::State& state) {
    const ComplexMatrix m = random_hermitian(state.range(0), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm_hermitian_scaled(m, -0.3));
    }
}
BENCHMARK(bench_expm)->Arg(4)->Arg(16);

void bench_detect_blocks(benchmark::State& state) {
    // Two disjoint 2x2-E blocks in a 2x4 system.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(8, 8);
    const ComplexMatrix b1 = random_density(4, 5);
    const ComplexMatrix b2 = random_density(4, 6);
    for (Eigen::Index s = 0; s < 2; ++s) {
        for (Eigen::Index t = 0; t < 2; ++t) {
            for (Eigen::Index e = 0; e < 2; ++e) {
                for (Eigen::Index f = 0; f < 2; ++f) {
                    rho(s * 4 + e, t * 4 + f) = 0.5 * b1.data(s * 2 + e, t * 2 + f);
                    rho(s * 4 + 2 + e, t * 4 + 2 + f) = 0.5 * b2.data(s * 2 + e, t * 2 + f);
                }
            }
        }
    }
    const BipartiteState st(2, 4, ComplexMatrix(std::move(rho)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_blocks(st));
    }
}
BENCHMARK(bench_detect_blocks);

void bench_wootters_eof(benchmark::State& state) {
    const ComplexMatrix rho = random_density(4, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wootters_eof(rho));
    }
}
BENCHMARK(bench_wootters_eof);

void bench_gibbs_blocks(benchmark::State& state) {
    const ModelSpec spec = ModelSpec::make(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gibbs_blocks(spec, 0.5));
    }
}
BENCHMARK(bench_gibbs_blocks)->Arg(1)->Arg(10)->Arg(100);

void bench_sweep_point(benchmark::State& state) {
    const ModelSpec spec = ModelSpec::make(static_cast<int>(state.range(0)), 1.0);
    const std::vector<double> grid = {0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(spec, grid));
    }
}
BENCHMARK(bench_sweep_point)->Arg(10)->Arg(100);

void bench_minimize_roof_werner(benchmark::State& state) {
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd rho =
        0.5 * (bell * bell.adjoint()) + 0.125 * Eigen::MatrixXcd::Identity(4, 4);
    const ComplexMatrix target(std::move(rho));
    const PureMeasure measure = [](const PureBipartiteState& psi) {
        return linear_entropy_entanglement(psi);
    };
    RoofBudget budget;
    budget.samples = state.range(0);
    budget.refine_iters = 50;
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_roof(target, 2, 2, measure, budget, 42));
    }
}
BENCHMARK(bench_minimize_roof_werner)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
