// Micro benchmarks for the numerical hot paths.
#include <benchmark/benchmark.h>

#include "releq/entanglement.hpp"
#include "releq/protocols.hpp"
#include "releq/qalgo.hpp"

using namespace releq;

namespace {

cxmat make_hermitian(Eigen::Index d, rng& gen) {
    cxmat g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = std::complex<double>(gen.gaussian(), gen.gaussian());
    return 0.5 * (g + g.adjoint());
}

void BM_hermitian_eig(benchmark::State& state) {
    rng gen(1);
    cxmat m = make_hermitian(state.range(0), gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(m));
    }
}
BENCHMARK(BM_hermitian_eig)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

void BM_tensor(benchmark::State& state) {
    rng gen(2);
    cxmat a = make_hermitian(state.range(0), gen);
    cxmat b = make_hermitian(state.range(0), gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor(a, b));
    }
}
BENCHMARK(BM_tensor)->Arg(4)->Arg(8);

void BM_partial_trace(benchmark::State& state) {
    rng gen(3);
    const Eigen::Index d = state.range(0);
    cxmat m = make_hermitian(d * d, gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(m, d, d, 0));
    }
}
BENCHMARK(BM_partial_trace)->Arg(2)->Arg(4)->Arg(8);

void BM_fidelity(benchmark::State& state) {
    rng gen(4);
    density_matrix a = random_density(state.range(0), state.range(0), gen);
    density_matrix b = random_density(state.range(0), state.range(0), gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity(a, b));
    }
}
BENCHMARK(BM_fidelity)->Arg(2)->Arg(4)->Arg(8);

void BM_qrelent(benchmark::State& state) {
    rng gen(5);
    density_matrix a = random_density(state.range(0), state.range(0), gen);
    density_matrix b = random_density(state.range(0), state.range(0), gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qrelent(a, b, units::nats));
    }
}
BENCHMARK(BM_qrelent)->Arg(2)->Arg(4)->Arg(8);

void BM_schmidt(benchmark::State& state) {
    rng gen(6);
    ket psi = random_state(state.range(0) * state.range(0), gen);
    psi.dims = {state.range(0), state.range(0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(schmidt(psi));
    }
}
BENCHMARK(BM_schmidt)->Arg(2)->Arg(4);

void BM_ree_bell(benchmark::State& state) {
    density_matrix bell = density_matrix::make(projector(bell_basis()[0]), {2, 2});
    ree_options opts;
    opts.restarts = 2;
    opts.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ree(bell, opts));
    }
}
BENCHMARK(BM_ree_bell);

void BM_ree_gradient(benchmark::State& state) {
    rng gen(8);
    density_matrix rho = random_density(4, 2, gen);
    rho.dims = {2, 2};
    separable_ansatz ansatz = separable_ansatz::random(2, 2, 8, gen);
    cxmat sigma = ansatz.assemble();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ree_gradient(rho, sigma));
    }
}
BENCHMARK(BM_ree_gradient);

void BM_grover_block(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grover_trace(n, 1.0, 3));
    }
}
BENCHMARK(BM_grover_block)->Arg(3)->Arg(4)->Arg(5);

void BM_teleport_branches(benchmark::State& state) {
    rng gen(9);
    ket input = random_state(2, gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(teleport_branches(input));
    }
}
BENCHMARK(BM_teleport_branches);

}  // namespace

BENCHMARK_MAIN();
