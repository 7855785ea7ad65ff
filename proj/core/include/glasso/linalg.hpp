#pragma once

#include <optional>
#include <vector>

#include "glasso/sym_matrix.hpp"

namespace glasso {

// Lower-triangular Cholesky factor L with A = L * L^T; diagonal strictly positive.
class CholeskyFactor {
public:
    int n() const { return n_; }

    // lower triangle entry; zero above the diagonal
    double operator()(int i, int j) const {
        return j <= i ? l_[static_cast<std::size_t>(i) * n_ + j] : 0.0;
    }

    const double* data() const { return l_.data(); }

    // in-place b <- L^-1 b (forward substitution)
    void solve_lower(double* b) const;
    // in-place b <- L^-T b (back substitution)
    void solve_lower_transposed(double* b) const;

private:
    friend std::optional<CholeskyFactor> cholesky(const SymMatrix& a);
    int n_ = 0;
    std::vector<double> l_; // row-major, entries above the diagonal left zero
};

// Factor iff `a` is numerically positive definite. A pivot <= n * eps * max
// diagonal entry counts as failure (NotPD), signalled by nullopt: callers
// interpret it as "not positive definite", never as a fault.
std::optional<CholeskyFactor> cholesky(const SymMatrix& a);

// A^-1 from the factor; symmetric by construction.
SymMatrix spd_inverse(const CholeskyFactor& f);

// log det A = 2 * sum_i log L[i][i]
double log_det(const CholeskyFactor& f);

struct EigExtremes {
    double lambda_min;
    double lambda_max;
};

// Extreme eigenvalues of a symmetric matrix. lambda_max by power iteration on
// a Gershgorin-shifted copy; lambda_min by inverse iteration on the Cholesky
// factor when `a` is PD, otherwise shift-inverted through a + mu*I with mu
// escalated until the factorization succeeds. Each estimate runs from an
// all-ones start plus two fixed-seed random starts and keeps the most extreme
// converged Rayleigh quotient; throws NoConvergence only if no start settles
// within max_iter sweeps.
EigExtremes eig_extremes(const SymMatrix& a, double tol, int max_iter);

// lambda_max / lambda_min at tol 1e-6 with a sweep budget of max(10*n, 200).
double condition_estimate(const SymMatrix& a);

// a * m * a with a final symmetrization to kill round-off drift.
SymMatrix sym_triple_product(const SymMatrix& a, const SymMatrix& m);

} // namespace glasso
