// Microbenchmarks for the dense kernels that dominate solver wall time, plus
// one end-to-end iteration cost. Not registered with ctest; run manually:
//   build/bin/glasso_bench [--benchmark_filter=...]

#include <cstdint>
#include <optional>
#include <vector>

#include <benchmark/benchmark.h>

#include <glasso/glasso.hpp>

namespace {

glasso::SymMatrix chain_spd(int n) {
    auto [m, shift] = glasso::spd_shift(glasso::gen_chain(n));
    (void)shift;
    return m;
}

// a standardized chain problem at the scale the solver actually runs
glasso::Problem chain_problem(int n, double alpha) {
    glasso::GroundTruth truth;
    truth.precision = chain_spd(n);
    truth.kind = glasso::GraphKind::Chain;
    const int m = std::max(static_cast<int>(0.03 * n), 10);
    const glasso::SymMatrix s =
        glasso::standardize(glasso::empirical_cov(glasso::sample_mvn(truth, m, 0)));
    return {s, alpha};
}

void bm_cholesky(benchmark::State& state) {
    const glasso::SymMatrix a = chain_spd(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto f = glasso::cholesky(a);
        benchmark::DoNotOptimize(f);
    }
}

void bm_spd_inverse(benchmark::State& state) {
    const glasso::SymMatrix a = chain_spd(static_cast<int>(state.range(0)));
    const auto f = glasso::cholesky(a);
    for (auto _ : state) {
        glasso::SymMatrix w = glasso::spd_inverse(*f);
        benchmark::DoNotOptimize(w);
    }
}

void bm_sym_triple_product(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const glasso::SymMatrix a = chain_spd(n);
    glasso::SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m.set(i, j, 1.0 / (1.0 + i + j));
    for (auto _ : state) {
        glasso::SymMatrix out = glasso::sym_triple_product(a, m);
        benchmark::DoNotOptimize(out);
    }
}

void bm_direction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const glasso::Problem prob = chain_problem(n, 0.6);
    const glasso::SymMatrix a = glasso::init_diagonal(prob);
    const auto chol = glasso::cholesky(a);
    const glasso::SymMatrix g = glasso::gradient(glasso::spd_inverse(*chol), prob);
    const glasso::Mask mask = glasso::free_set(a, g, prob.alpha);
    const glasso::SymMatrix gs = glasso::g_sign_approx(a, g);
    const glasso::SymMatrix c = glasso::c_matrix(a, prob.alpha);
    const glasso::SymMatrix b = glasso::b_matrix(a, g, gs, mask, c, prob.alpha);
    for (auto _ : state) {
        glasso::SymMatrix d = glasso::direction(a, b, c, 1.0);
        benchmark::DoNotOptimize(d);
    }
}

void bm_pista_iteration(benchmark::State& state) {
    const glasso::Problem prob = chain_problem(static_cast<int>(state.range(0)), 0.6);
    glasso::SolverConfig cfg;
    cfg.max_iter = 1; // first full iteration: factorize, invert, B/C, linesearch
    cfg.trace = false;
    for (auto _ : state) {
        glasso::SolveResult r = glasso::solve_pista(prob, cfg);
        benchmark::DoNotOptimize(r);
    }
}

void bm_gista_iteration(benchmark::State& state) {
    const glasso::Problem prob = chain_problem(static_cast<int>(state.range(0)), 0.6);
    glasso::SolverConfig cfg;
    cfg.max_iter = 1;
    cfg.trace = false;
    for (auto _ : state) {
        glasso::SolveResult r = glasso::solve_gista(prob, cfg);
        benchmark::DoNotOptimize(r);
    }
}

BENCHMARK(bm_cholesky)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_spd_inverse)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sym_triple_product)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_direction)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pista_iteration)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gista_iteration)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
