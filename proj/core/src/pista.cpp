#include "glasso/pista.hpp"

#include <cmath>
#include <string>

#include "glasso/errors.hpp"
#include "solver_driver.hpp"

namespace glasso {

namespace {
inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
} // namespace

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Criterion: return "Criterion";
        case Termination::MaxIter: return "MaxIter";
        case Termination::LinesearchStall: return "LinesearchStall";
    }
    return "?";
}

SymMatrix init_diagonal(const Problem& prob) {
    const int n = prob.s.n();
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        const double d = prob.s(i, i) + prob.alpha;
        if (!(d > 0.0))
            throw NonPositiveDiagonal("init_diagonal: S[" + std::to_string(i) + "][" + std::to_string(i) +
                                      "] + alpha is not positive");
        a.set(i, i, 1.0 / d);
    }
    return a;
}

SymMatrix g_sign_approx(const SymMatrix& a, const SymMatrix& g) {
    const int n = a.n();
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double aij = a(i, j);
            out.set(i, j, aij != 0.0 ? sign(aij) : -sign(g(i, j)));
        }
    return out;
}

SymMatrix c_matrix(const SymMatrix& a, double alpha) {
    const int n = a.n();
    SymMatrix c(n);
    for (int i = 0; i < n; ++i) {
        const double aii = a(i, i);
        c.set(i, i, alpha * aii * aii);
        for (int j = 0; j < i; ++j) {
            const double aij = a(i, j);
            c.set(i, j, alpha * (aii * a(j, j) + aij * aij));
        }
    }
    return c;
}

SymMatrix b_matrix(const SymMatrix& a, const SymMatrix& g, const SymMatrix& gsign,
                   const Mask& mask, const SymMatrix& c, double alpha) {
    const int n = a.n();
    // A(g (.) M)A + alpha * A(gsign (.) M)A folded into one triple product
    SymMatrix inner(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (mask(i, j)) inner.set(i, j, g(i, j) + alpha * gsign(i, j));
    SymMatrix b = sym_triple_product(a, inner);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (mask(i, j)) b.set(i, j, b(i, j) - c(i, j) * gsign(i, j));
    return b;
}

SymMatrix direction(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c, double t) {
    const int n = a.n();
    SymMatrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double aij = a(i, j);
            d.set(i, j, -aij + soft_threshold(aij - t * b(i, j), t * c(i, j)));
        }
    return d;
}

double scalar_sign_solve(double a, double b, double c) {
    return -a + soft_threshold(a - b, c);
}

std::optional<StepOutcome> linesearch(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c,
                                      const Mask& mask, const Problem& prob, double f_curr,
                                      const SolverConfig& cfg) {
    const int n = a.n();
    return detail::backtrack(a, prob, f_curr, cfg, [&](double t) {
        const SymMatrix d = direction(a, b, c, t);
        SymMatrix cand = a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                if (mask(i, j)) cand.set(i, j, a(i, j) + d(i, j));
        return cand;
    });
}

SolveResult solve_pista(const Problem& prob, const SolverConfig& cfg,
                        std::optional<SymMatrix> a0, const IterationObserver& observer) {
    return detail::run_solver(prob, cfg, std::move(a0), observer,
                              [&](const SymMatrix& a, const SymMatrix& g, double f_curr) {
                                  const Mask mask = free_set(a, g, prob.alpha);
                                  const SymMatrix gs = g_sign_approx(a, g);
                                  const SymMatrix c = c_matrix(a, prob.alpha);
                                  const SymMatrix b = b_matrix(a, g, gs, mask, c, prob.alpha);
                                  return linesearch(a, b, c, mask, prob, f_curr, cfg);
                              });
}

} // namespace glasso
