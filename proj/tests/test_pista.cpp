#include <cmath>
#include <optional>
#include <vector>

#include <doctest.h>

#include <glasso/glasso.hpp>

#include "support/helpers.hpp"
#include "support/oracles.hpp"

using glasso::Mask;
using glasso::Problem;
using glasso::SolveResult;
using glasso::SolverConfig;
using glasso::SymMatrix;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::sym;

namespace {

Problem worked_problem() { return {sym({{1, 0.9}, {0.9, 1}}), 0.5}; }

constexpr double kWorkedF0 = 2.8109302162163288;
constexpr double kWorkedF1 = 2.7424741442337153;

struct IterateState {
    SymMatrix w;
    SymMatrix g;
    Mask mask;
    SymMatrix gsign;
    SymMatrix c;
    SymMatrix b;
    double f = 0.0;
};

IterateState state_at(const SymMatrix& a, const Problem& prob) {
    IterateState st;
    const auto chol = glasso::cholesky(a);
    REQUIRE(chol.has_value());
    st.w = glasso::spd_inverse(*chol);
    st.g = glasso::gradient(st.w, prob);
    st.mask = glasso::free_set(a, st.g, prob.alpha);
    st.gsign = glasso::g_sign_approx(a, st.g);
    st.c = glasso::c_matrix(a, prob.alpha);
    st.b = glasso::b_matrix(a, st.g, st.gsign, st.mask, st.c, prob.alpha);
    st.f = glasso::f_total(a, prob, glasso::log_det(*chol));
    return st;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : x < 0.0 ? -1.0 : 0.0; }

} // namespace

TEST_SUITE("pista") {

TEST_CASE("init_diagonal closed forms") {
    CHECK(max_abs_diff(glasso::init_diagonal({SymMatrix::identity(2), 0.5}),
                       SymMatrix::diagonal({2.0 / 3, 2.0 / 3})) <= 1e-16);
    CHECK(max_abs_diff(glasso::init_diagonal({SymMatrix::diagonal({0, 0}), 1.0}),
                       SymMatrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(glasso::init_diagonal({SymMatrix::diagonal({1, 3}), 1.0}),
                       SymMatrix::diagonal({0.5, 0.25})) == 0.0);
}

TEST_CASE("g_sign_approx closed forms") {
    const SymMatrix a0 = SymMatrix::diagonal({2.0 / 3, 2.0 / 3});
    const SymMatrix g0 = sym({{-0.5, 0.9}, {0.9, -0.5}});
    CHECK(max_abs_diff(glasso::g_sign_approx(a0, g0), sym({{1, -1}, {-1, 1}})) == 0.0);

    // on the support the sign of A wins; off it, -sign(g)
    const SymMatrix gs = glasso::g_sign_approx(SymMatrix::identity(2), g0);
    CHECK(gs(0, 0) == 1.0);
    CHECK(gs(1, 1) == 1.0);
    CHECK(gs(0, 1) == -1.0);

    CHECK(max_abs(glasso::g_sign_approx(SymMatrix(2), SymMatrix(2))) == 0.0);
}

TEST_CASE("c_matrix closed forms") {
    CHECK(max_abs_diff(glasso::c_matrix(SymMatrix::identity(2), 0.5), sym({{0.5, 0.5}, {0.5, 0.5}})) ==
          0.0);
    const double c29 = 2.0 / 9;
    CHECK(max_abs_diff(glasso::c_matrix(SymMatrix::diagonal({2.0 / 3, 2.0 / 3}), 0.5),
                       sym({{c29, c29}, {c29, c29}})) <= 1e-16);
    CHECK(max_abs_diff(glasso::c_matrix(sym({{2, 1}, {1, 3}}), 1.0), sym({{4, 7}, {7, 9}})) == 0.0);
}

TEST_CASE("c_matrix is strictly positive on positive definite input") {
    const SymMatrix a = testsupport::random_spd(9, 17);
    const SymMatrix c = glasso::c_matrix(a, 0.3);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) CHECK(c(i, j) > 0.0);
}

TEST_CASE("b_matrix on the worked instance") {
    const Problem prob = worked_problem();
    const SymMatrix a0 = glasso::init_diagonal(prob);
    const IterateState st = state_at(a0, prob);
    // the sign-surrogate contributions cancel here, leaving (4/9) * g
    CHECK(max_abs_diff(st.b, sym({{-2.0 / 9, 0.4}, {0.4, -2.0 / 9}})) <= 1e-15);
}

TEST_CASE("b_matrix degenerate cases") {
    // zero iterate and zero gradient: every term vanishes
    const SymMatrix zero(2);
    Mask full(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) full.set(i, j, true);
    const SymMatrix c = glasso::c_matrix(zero, 0.5);
    CHECK(max_abs(glasso::b_matrix(zero, zero, glasso::g_sign_approx(zero, zero), full, c, 0.5)) ==
          0.0);

    // empty mask: every Hadamard factor is zero
    const SymMatrix a = testsupport::random_spd(4, 3);
    const SymMatrix g = testsupport::random_symmetric(4, 4);
    const Mask empty(4);
    const SymMatrix ce = glasso::c_matrix(a, 0.7);
    CHECK(max_abs(glasso::b_matrix(a, g, glasso::g_sign_approx(a, g), empty, ce, 0.7)) == 0.0);
}

TEST_CASE("b_matrix merged evaluation equals the three-term form") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int n = 8;
        const SymMatrix a = testsupport::random_spd(n, seed);
        SymMatrix g = testsupport::random_symmetric(n, seed + 21);
        g.set(1, 2, 0.0); // exercise off-support entries
        const double alpha = 0.45;
        const SymMatrix gsign = glasso::g_sign_approx(a, g);
        const Mask mask = glasso::free_set(a, g, alpha);
        const SymMatrix c = glasso::c_matrix(a, alpha);
        const SymMatrix merged = glasso::b_matrix(a, g, gsign, mask, c, alpha);

        SymMatrix gm(n), sm(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                gm.set(i, j, mask(i, j) ? g(i, j) : 0.0);
                sm.set(i, j, mask(i, j) ? gsign(i, j) : 0.0);
            }
        const SymMatrix t1 = glasso::sym_triple_product(a, gm);
        const SymMatrix t2 = glasso::sym_triple_product(a, sm);
        SymMatrix three(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                three.set(i, j, t1(i, j) + alpha * t2(i, j) - c(i, j) * sm(i, j));

        const double scale = std::max(1.0, max_abs(three));
        CHECK(max_abs_diff(merged, three) <= 1e-12 * scale);
    }
}

TEST_CASE("direction on the worked instance at t = 1") {
    const Problem prob = worked_problem();
    const SymMatrix a0 = glasso::init_diagonal(prob);
    const IterateState st = state_at(a0, prob);
    const SymMatrix d = glasso::direction(a0, st.b, st.c, 1.0);
    CHECK(max_abs_diff(d, sym({{0, -8.0 / 45}, {-8.0 / 45, 0}})) <= 1e-12);
}

TEST_CASE("direction with b = 0 shrinks the iterate toward zero") {
    const SymMatrix a = testsupport::random_spd(5, 9);
    const SymMatrix b(5);
    const SymMatrix c = glasso::c_matrix(a, 0.8);
    const double t = 0.7;
    const SymMatrix d = glasso::direction(a, b, c, t);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(d(i, j) == -a(i, j) + glasso::soft_threshold(a(i, j), t * c(i, j)));
}

TEST_CASE("direction vanishes at the 1x1 analytic optimum") {
    for (const double s : {0.0, 0.5, 2.0}) {
        for (const double alpha : {0.1, 0.5, 2.0}) {
            SymMatrix sm(1);
            sm.set(0, 0, s);
            const Problem prob{sm, alpha};
            const SymMatrix a = glasso::init_diagonal(prob); // 1/(s+alpha), the minimizer
            const IterateState st = state_at(a, prob);
            for (const double t : {1e-3, 0.25, 1.0, 10.0})
                CHECK(max_abs(glasso::direction(a, st.b, st.c, t)) <= 1e-12);
        }
    }
}

TEST_CASE("direction vanishes at an oracle-converged iterate") {
    const Problem prob = testsupport::random_problem(8, 40, 0.2, 0.4, 3);
    const SymMatrix a = testsupport::reference_ista(prob, 1e-10, 500000);
    const IterateState st = state_at(a, prob);
    for (const double t : {0.25, 1.0, 4.0})
        CHECK(max_abs(glasso::direction(a, st.b, st.c, t)) <= 1e-8);
}

TEST_CASE("scalar_sign_solve closed forms") {
    CHECK(glasso::scalar_sign_solve(0, 2, 1) == -1.0);
    CHECK(glasso::scalar_sign_solve(1, 0.5, 2) == -1.0); // c > |b - a|: x = -a
    CHECK(glasso::scalar_sign_solve(0, -3, 1) == 2.0);
}

TEST_CASE("scalar_sign_solve satisfies the sign-equation inclusion") {
    glasso::Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
        const double a = 3.0 * rng.normal();
        const double b = 3.0 * rng.normal();
        const double c = 1e-3 + std::abs(rng.normal());
        const double x = glasso::scalar_sign_solve(a, b, c);
        if (x + a != 0.0)
            CHECK(std::abs(x + b + c * sign_of(x + a)) <= 1e-12);
        else
            CHECK(std::abs((a - b) / c) <= 1.0 + 1e-12);
    }
}

TEST_CASE("linesearch accepts t = 1 on the worked instance") {
    const Problem prob = worked_problem();
    const SymMatrix a0 = glasso::init_diagonal(prob);
    const IterateState st = state_at(a0, prob);
    CHECK(st.f == doctest::Approx(kWorkedF0).epsilon(1e-14));

    const auto step = glasso::linesearch(a0, st.b, st.c, st.mask, prob, st.f, SolverConfig{});
    REQUIRE(step.has_value());
    CHECK(step->t == 1.0);
    CHECK(step->trials == 1);
    CHECK(step->f_next == doctest::Approx(kWorkedF1).epsilon(1e-14));
    const double e = 2.0 / 3, o = -8.0 / 45;
    CHECK(max_abs_diff(step->a_next, sym({{e, o}, {o, e}})) <= 1e-12);
}

TEST_CASE("linesearch stalls when the direction is zero") {
    SymMatrix s(1);
    s.set(0, 0, 2.0);
    const Problem prob{s, 0.5};
    const SymMatrix a = glasso::init_diagonal(prob); // already optimal: d = 0, no strict decrease
    const IterateState st = state_at(a, prob);
    CHECK_FALSE(glasso::linesearch(a, st.b, st.c, st.mask, prob, st.f, SolverConfig{}).has_value());
}

TEST_CASE("solve_pista on a 1x1 problem returns the analytic optimum immediately") {
    SymMatrix s(1);
    s.set(0, 0, 2.0);
    const SolveResult res = glasso::solve_pista({s, 0.5}, SolverConfig{});
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.termination == glasso::Termination::Criterion);
    CHECK(res.estimate(0, 0) == 1.0 / 2.5);
    REQUIRE(res.traces.size() == 1);
    CHECK(res.traces[0].iter == 0);
    CHECK(res.traces[0].step_t == 0.0);
    CHECK(res.traces[0].linesearch_trials == 0);
}

TEST_CASE("solve_pista worked instance: first iterate, descent, oracle agreement") {
    const Problem prob = worked_problem();

    SolverConfig one;
    one.max_iter = 1;
    const SolveResult first = glasso::solve_pista(prob, one);
    REQUIRE(first.traces.size() == 2);
    CHECK(first.traces[0].f_total == doctest::Approx(kWorkedF0).epsilon(1e-14));
    CHECK(first.traces[1].f_total == doctest::Approx(kWorkedF1).epsilon(1e-14));
    const double e = 2.0 / 3, o = -8.0 / 45;
    CHECK(max_abs_diff(first.estimate, sym({{e, o}, {o, e}})) <= 1e-12);
    CHECK(first.termination == glasso::Termination::MaxIter);

    const SolveResult res = glasso::solve_pista(prob, SolverConfig{});
    CHECK(res.converged);
    CHECK(res.iterations == 3);
    const SymMatrix oracle = testsupport::reference_ista(prob, 1e-10, 500000);
    CHECK(max_abs_diff(res.estimate, oracle) <= 1e-4);

    SolverConfig tight;
    tight.stop_rel = 1e-6;
    const SolveResult res6 = glasso::solve_pista(prob, tight);
    CHECK(res6.converged);
    CHECK(max_abs_diff(res6.estimate, oracle) <= 1e-6);
}

TEST_CASE("solve_pista chain n=100 run converges with monotone PD trace") {
    glasso::GroundTruth truth;
    auto [prec, shift] = glasso::spd_shift(glasso::gen_chain(100));
    truth.precision = std::move(prec);
    truth.kind = glasso::GraphKind::Chain;
    truth.shift = shift;
    const SymMatrix s = glasso::empirical_cov(glasso::sample_mvn(truth, 30, 0));
    const Problem prob{s, 0.6, truth.precision};

    int observed = 0;
    const SolveResult res = glasso::solve_pista(prob, SolverConfig{}, {},
                                                [&](int, const SymMatrix&, const SymMatrix& next) {
                                                    ++observed;
                                                    CHECK(glasso::cholesky(next).has_value());
                                                });
    CHECK(res.converged);
    CHECK(res.termination == glasso::Termination::Criterion);
    CHECK(observed == res.iterations);
    REQUIRE(res.traces.size() == static_cast<std::size_t>(res.iterations) + 1);
    for (std::size_t k = 1; k < res.traces.size(); ++k) {
        CHECK(res.traces[k].f_total < res.traces[k - 1].f_total);
        CHECK(res.traces[k].step_t > 0.0);
        CHECK(res.traces[k].linesearch_trials >= 1);
        CHECK(res.traces[k].wall_ms >= res.traces[k - 1].wall_ms);
    }
    CHECK(res.traces.back().nnz == glasso::norms(res.estimate).nnz);
}

TEST_CASE("solve_pista updates stay inside the free-set") {
    const Problem prob = testsupport::random_problem(12, 36, 0.15, 0.3, 7);
    const SolveResult res = glasso::solve_pista(
        prob, SolverConfig{}, {}, [&](int, const SymMatrix& prev, const SymMatrix& next) {
            const SymMatrix w = glasso::spd_inverse(*glasso::cholesky(prev));
            const Mask mask = glasso::free_set(prev, glasso::gradient(w, prob), prob.alpha);
            for (int i = 0; i < prev.n(); ++i)
                for (int j = 0; j < prev.n(); ++j)
                    if (!mask(i, j)) CHECK(next(i, j) == prev(i, j));
        });
    CHECK(res.converged);
}

TEST_CASE("late iterations use a sign surrogate consistent with the next support") {
    const Problem prob = testsupport::random_problem(8, 40, 0.2, 0.35, 11);
    std::vector<SymMatrix> iterates{glasso::init_diagonal(prob)};
    SolverConfig cfg;
    cfg.stop_rel = 1e-4;
    const SolveResult res = glasso::solve_pista(
        prob, cfg, {},
        [&](int, const SymMatrix&, const SymMatrix& next) { iterates.push_back(next); });
    CHECK(res.converged);
    REQUIRE(iterates.size() >= 2);

    const auto support_equal = [](const SymMatrix& x, const SymMatrix& y) {
        for (int i = 0; i < x.n(); ++i)
            for (int j = 0; j < x.n(); ++j)
                if ((x(i, j) != 0.0) != (y(i, j) != 0.0)) return false;
        return true;
    };

    int stable_pairs = 0;
    for (std::size_t k = 0; k + 1 < iterates.size(); ++k) {
        const SymMatrix& prev = iterates[k];
        const SymMatrix& next = iterates[k + 1];
        if (!support_equal(prev, next)) continue;
        ++stable_pairs;
        const SymMatrix w = glasso::spd_inverse(*glasso::cholesky(prev));
        const SymMatrix g = glasso::gradient(w, prob);
        const SymMatrix gsign = glasso::g_sign_approx(prev, g);
        const Mask mask = glasso::free_set(prev, g, prob.alpha);
        for (int i = 0; i < next.n(); ++i)
            for (int j = 0; j < next.n(); ++j)
                if (next(i, j) != 0.0) {
                    CHECK(mask(i, j));
                    CHECK(gsign(i, j) == sign_of(next(i, j)));
                }
    }
    CHECK(stable_pairs >= 1);
}

} // TEST_SUITE
