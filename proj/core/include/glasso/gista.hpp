#pragma once

#include <optional>

#include "glasso/objective.hpp"
#include "glasso/solver.hpp"

namespace glasso {

// Proximal-gradient baseline: A+ = soft_threshold(A - t*(S - A^-1), t*alpha)
// entrywise, with the same backtracking contract as the pista linesearch
// (PD via Cholesky + strict F decrease, floor, condition-number fallback),
// the same stopping criterion, and the same trace schema.
SolveResult solve_gista(const Problem& prob, const SolverConfig& cfg,
                        std::optional<SymMatrix> a0 = {},
                        const IterationObserver& observer = {});

} // namespace glasso
