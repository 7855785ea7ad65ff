#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glasso/sym_matrix.hpp"

namespace glasso {

struct SolverConfig {
    int max_iter = 200;
    double stop_rel = 1e-2;       // stop when ||min subgrad||_1 < stop_rel * ||A||_1
    double t_init = 1.0;          // first linesearch trial step
    double backtrack = 0.5;       // trial shrink factor, in (0,1)
    double t_floor = 1e-4;        // below this, switch to the condition-number fallback
    double fallback_safety = 0.9; // fallback step = (fallback_safety / cond(A))^2
    bool trace = true;            // record per-iteration rows

    bool operator==(const SolverConfig&) const = default;
};

struct IterTrace {
    int iter = 0;
    double f_total = 0.0;
    double min_subgrad_l1 = 0.0;
    double min_subgrad_fro = 0.0;
    long long nnz = 0;
    double step_t = 0.0;       // accepted step that produced this iterate (0 for row 0)
    int linesearch_trials = 0; // candidate evaluations, including the accepted one
    double wall_ms = 0.0;      // cumulative milliseconds since solve start

    bool operator==(const IterTrace&) const = default;
};

enum class Termination { Criterion, MaxIter, LinesearchStall };

const char* to_string(Termination t);

struct SolveResult {
    SymMatrix estimate;
    std::vector<IterTrace> traces;
    bool converged = false;
    int iterations = 0;
    Termination termination = Termination::MaxIter;
};

// Test/diagnostic hook: called after each accepted step with the 1-based
// iteration number, the previous iterate, and the accepted next iterate.
using IterationObserver = std::function<void(int, const SymMatrix&, const SymMatrix&)>;

} // namespace glasso
