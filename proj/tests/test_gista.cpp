#include <cmath>

#include <doctest.h>

#include <glasso/glasso.hpp>

#include "support/helpers.hpp"
#include "support/oracles.hpp"

using glasso::Problem;
using glasso::SolveResult;
using glasso::SolverConfig;
using glasso::SymMatrix;
using testsupport::max_abs_diff;
using testsupport::sym;

TEST_SUITE("gista") {

TEST_CASE("solve_gista on a 1x1 problem returns the analytic optimum immediately") {
    SymMatrix s(1);
    s.set(0, 0, 2.0);
    const SolveResult res = glasso::solve_gista({s, 0.5}, SolverConfig{});
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.termination == glasso::Termination::Criterion);
    CHECK(res.estimate(0, 0) == 1.0 / 2.5);
}

TEST_CASE("solve_gista recovers the diagonal optimum from a non-optimal start") {
    const Problem prob{SymMatrix::diagonal({0.5, 1.0, 2.0}), 0.4};
    SolverConfig cfg;
    cfg.stop_rel = 1e-6;
    cfg.max_iter = 2000;
    const SolveResult res = glasso::solve_gista(prob, cfg, SymMatrix::identity(3));
    CHECK(res.converged);
    for (int i = 0; i < 3; ++i) {
        CHECK(res.estimate(i, i) == doctest::Approx(1.0 / (prob.s(i, i) + 0.4)).epsilon(1e-5));
        for (int j = 0; j < i; ++j) CHECK(res.estimate(i, j) == 0.0);
    }
}

TEST_CASE("solve_gista agrees with the oracle on the worked instance") {
    const Problem prob{sym({{1, 0.9}, {0.9, 1}}), 0.5};
    const SolveResult res = glasso::solve_gista(prob, SolverConfig{});
    CHECK(res.converged);
    CHECK(res.termination == glasso::Termination::Criterion);
    // the default stopping tolerance is coarse; 5e-3 reflects it honestly
    const SymMatrix oracle = testsupport::reference_ista(prob, 1e-10, 500000);
    CHECK(max_abs_diff(res.estimate, oracle) <= 5e-3);
}

TEST_CASE("solve_gista and solve_pista land on the same estimate") {
    const Problem prob = testsupport::random_problem(10, 50, 0.15, 0.3, 5);
    SolverConfig cfg;
    cfg.stop_rel = 1e-4;
    cfg.max_iter = 2000;
    const SolveResult gi = glasso::solve_gista(prob, cfg);
    const SolveResult pi = glasso::solve_pista(prob, cfg);
    CHECK(gi.converged);
    CHECK(pi.converged);
    CHECK(max_abs_diff(gi.estimate, pi.estimate) <= 1e-3);
}

TEST_CASE("solve_gista iterates are positive definite with strict descent") {
    const Problem prob = testsupport::random_problem(12, 36, 0.15, 0.3, 7);
    int observed = 0;
    const SolveResult res = glasso::solve_gista(prob, SolverConfig{}, {},
                                                [&](int, const SymMatrix&, const SymMatrix& next) {
                                                    ++observed;
                                                    CHECK(glasso::cholesky(next).has_value());
                                                });
    CHECK(res.converged);
    CHECK(observed == res.iterations);
    REQUIRE(res.traces.size() == static_cast<std::size_t>(res.iterations) + 1);
    for (std::size_t k = 1; k < res.traces.size(); ++k) {
        CHECK(res.traces[k].f_total < res.traces[k - 1].f_total);
        CHECK(res.traces[k].step_t > 0.0);
        CHECK(res.traces[k].linesearch_trials >= 1);
    }
    CHECK(res.traces.back().nnz == glasso::norms(res.estimate).nnz);
}

TEST_CASE("both solvers emit the same trace schema") {
    const Problem prob{sym({{1, 0.9}, {0.9, 1}}), 0.5};
    SolverConfig one;
    one.max_iter = 1;
    const SolveResult gi = glasso::solve_gista(prob, one);
    const SolveResult pi = glasso::solve_pista(prob, one);
    REQUIRE(gi.traces.size() == 2);
    REQUIRE(pi.traces.size() == 2);
    // the iteration-zero row is solver independent: same starting point, same fields
    CHECK(gi.traces[0].iter == pi.traces[0].iter);
    CHECK(gi.traces[0].f_total == pi.traces[0].f_total);
    CHECK(gi.traces[0].min_subgrad_l1 == pi.traces[0].min_subgrad_l1);
    CHECK(gi.traces[0].min_subgrad_fro == pi.traces[0].min_subgrad_fro);
    CHECK(gi.traces[0].nnz == pi.traces[0].nnz);
    CHECK(gi.traces[0].step_t == 0.0);
    CHECK(pi.traces[0].step_t == 0.0);
}

} // TEST_SUITE
