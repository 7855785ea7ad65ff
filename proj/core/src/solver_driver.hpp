#pragma once

// Internal driver shared by the pista and gista entry points: both solvers
// run the same outer loop (stopping check at the top of every iteration,
// trace rows, observer) and the same backtracking contract (PD via Cholesky
// + strict F decrease, step floor, one condition-number fallback).

#include <chrono>
#include <optional>
#include <stdexcept>
#include <utility>

#include "glasso/linalg.hpp"
#include "glasso/objective.hpp"
#include "glasso/pista.hpp"
#include "glasso/solver.hpp"

namespace glasso::detail {

// make_candidate(t) -> SymMatrix trial iterate. Accepts the first t from
// cfg.t_init (shrinking by cfg.backtrack) whose candidate factorizes and
// strictly decreases F; below cfg.t_floor, tries the fallback
// (cfg.fallback_safety / cond(a))^2 once; nullopt = Stall.
template <class CandidateFn>
std::optional<StepOutcome> backtrack(const SymMatrix& a, const Problem& prob, double f_curr,
                                     const SolverConfig& cfg, const CandidateFn& make_candidate) {
    int trials = 0;
    const auto try_step = [&](double t) -> std::optional<StepOutcome> {
        ++trials;
        SymMatrix cand = make_candidate(t);
        auto chol = cholesky(cand);
        if (!chol) return std::nullopt;
        const double f = f_total(cand, prob, log_det(*chol));
        if (!(f < f_curr)) return std::nullopt;
        return StepOutcome{t, std::move(cand), std::move(*chol), f, trials};
    };

    for (double t = cfg.t_init; t >= cfg.t_floor; t *= cfg.backtrack)
        if (auto s = try_step(t)) return s;

    const double cond = condition_estimate(a);
    const double t_fb = (cfg.fallback_safety / cond) * (cfg.fallback_safety / cond);
    return try_step(t_fb);
}

// step_fn(a, g, f_curr) -> optional<StepOutcome> produces one accepted step
// or signals a stall.
template <class StepFn>
SolveResult run_solver(const Problem& prob, const SolverConfig& cfg, std::optional<SymMatrix> a0,
                       const IterationObserver& observer, const StepFn& step_fn) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto wall_ms = [&] {
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    SymMatrix a = a0 ? std::move(*a0) : init_diagonal(prob);
    auto chol = cholesky(a);
    if (!chol) throw std::invalid_argument("solver: starting iterate is not positive definite");
    double f_curr = f_total(a, prob, log_det(*chol));

    SolveResult res;
    double prev_t = 0.0;
    int prev_trials = 0;

    for (int k = 0;; ++k) {
        const SymMatrix w = spd_inverse(*chol);
        const SymMatrix g = gradient(w, prob);
        const Norms sub = norms(min_subgradient(a, g, prob.alpha));
        const Norms an = norms(a);
        if (cfg.trace)
            res.traces.push_back({k, f_curr, sub.l1, sub.fro, an.nnz, prev_t, prev_trials, wall_ms()});

        // stopping criterion, plus the degenerate empty-free-set case (then the
        // minimum subgradient is entrywise zero off an empty support)
        if (sub.l1 < cfg.stop_rel * an.l1 || free_set(a, g, prob.alpha).count() == 0) {
            res.converged = true;
            res.termination = Termination::Criterion;
            res.iterations = k;
            break;
        }
        if (k >= cfg.max_iter) {
            res.termination = Termination::MaxIter;
            res.iterations = k;
            break;
        }

        auto step = step_fn(a, g, f_curr);
        if (!step) {
            res.termination = Termination::LinesearchStall;
            res.iterations = k;
            break;
        }
        if (observer) observer(k + 1, a, step->a_next);
        a = std::move(step->a_next);
        chol = std::move(step->chol_next);
        f_curr = step->f_next;
        prev_t = step->t;
        prev_trials = step->trials;
    }

    res.estimate = std::move(a);
    return res;
}

} // namespace glasso::detail
