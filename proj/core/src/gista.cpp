#include "glasso/gista.hpp"

#include <utility>

#include "solver_driver.hpp"

namespace glasso {

SolveResult solve_gista(const Problem& prob, const SolverConfig& cfg,
                        std::optional<SymMatrix> a0, const IterationObserver& observer) {
    return detail::run_solver(prob, cfg, std::move(a0), observer,
                              [&](const SymMatrix& a, const SymMatrix& g, double f_curr) {
                                  const int n = a.n();
                                  return detail::backtrack(a, prob, f_curr, cfg, [&](double t) {
                                      SymMatrix cand(n);
                                      for (int i = 0; i < n; ++i)
                                          for (int j = 0; j <= i; ++j)
                                              cand.set(i, j, soft_threshold(a(i, j) - t * g(i, j),
                                                                            t * prob.alpha));
                                      return cand;
                                  });
                              });
}

} // namespace glasso
