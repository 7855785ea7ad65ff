#pragma once

#include <optional>

#include "glasso/linalg.hpp"
#include "glasso/objective.hpp"
#include "glasso/solver.hpp"

namespace glasso {

// A0 with A0[i][i] = 1/(S[i][i] + alpha); throws NonPositiveDiagonal if any
// S[i][i] + alpha <= 0. For a 1x1 problem this is already the minimizer.
SymMatrix init_diagonal(const Problem& prob);

// Subgradient sign surrogate: sign(a[i][j]) on the support, -sign(g[i][j])
// off it, with sign(0) = 0.
SymMatrix g_sign_approx(const SymMatrix& a, const SymMatrix& g);

// C[i][i] = alpha * a[i][i]^2; C[i][j] = alpha * (a[i][i]*a[j][j] + a[i][j]^2).
// Strictly positive everywhere when `a` is PD.
SymMatrix c_matrix(const SymMatrix& a, double alpha);

// B = A(g (.) M)A + alpha * A(gsign (.) M)A - C (.) (gsign (.) M), evaluated
// as A((g + alpha*gsign) (.) M)A - C (.) (gsign (.) M) with one triple product.
SymMatrix b_matrix(const SymMatrix& a, const SymMatrix& g, const SymMatrix& gsign,
                   const Mask& mask, const SymMatrix& c, double alpha);

// D[i][j] = -a[i][j] + soft_threshold(a[i][j] - t*b[i][j], t*c[i][j])
SymMatrix direction(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c, double t);

// Solves 0 in x + b + c*T(x + a) where T is the sign set-valued map, c > 0:
// x = -a + soft_threshold(a - b, c). Exposed so the scalar lemma is testable
// in isolation.
double scalar_sign_solve(double a, double b, double c);

// A successful backtracking step.
struct StepOutcome {
    double t = 0.0;
    SymMatrix a_next;
    CholeskyFactor chol_next;
    double f_next = 0.0;
    int trials = 0; // candidate evaluations including the accepted one
};

// Backtracking from cfg.t_init by cfg.backtrack: accept the first t whose
// candidate A + M (.) D(t) passes Cholesky AND strictly decreases F. The
// direction is recomputed at every trial t (it depends on t inside the
// threshold); b and c are t-independent and computed once by the caller.
// Below cfg.t_floor, one fallback t = (cfg.fallback_safety / cond(a))^2 is
// tried; nullopt (Stall) if that fails too.
std::optional<StepOutcome> linesearch(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c,
                                      const Mask& mask, const Problem& prob, double f_curr,
                                      const SolverConfig& cfg);

// Algorithm: factorize A, form W = A^-1, g = S - W, free-set, sign surrogate,
// C, B, linesearch, update A <- A + M (.) D; stop when the l1 minimum
// subgradient drops below cfg.stop_rel * ||A||_1 (checked at the top of every
// iteration, so an optimal start reports 0 iterations), on max_iter, or on a
// linesearch stall.
SolveResult solve_pista(const Problem& prob, const SolverConfig& cfg,
                        std::optional<SymMatrix> a0 = {},
                        const IterationObserver& observer = {});

} // namespace glasso
