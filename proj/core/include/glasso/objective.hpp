#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glasso/sym_matrix.hpp"

namespace glasso {

// One GLASSO instance: minimize F(A) = -log det A + Tr(SA) + alpha * ||A||_1
// over positive definite A. The l1 norm runs over every entry including the
// diagonal. `truth` is the generating precision matrix, for reporting only.
struct Problem {
    SymMatrix s;
    double alpha = 0.0;
    std::optional<SymMatrix> truth;

    Problem(SymMatrix s_, double alpha_, std::optional<SymMatrix> truth_ = {})
        : s(std::move(s_)), alpha(alpha_), truth(std::move(truth_)) {
        if (!(alpha > 0.0)) throw std::invalid_argument("Problem: alpha must be > 0");
        for (int i = 0; i < s.n(); ++i)
            if (s(i, i) < 0.0) throw std::invalid_argument("Problem: S diagonal must be >= 0");
    }
};

// Symmetric boolean pattern; the free-set indicator.
class Mask {
public:
    Mask() = default;
    explicit Mask(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

    int n() const { return n_; }

    bool operator()(int i, int j) const { return a_[idx(i, j)] != 0; }

    void set(int i, int j, bool val) {
        a_[idx(i, j)] = val ? 1 : 0;
        a_[idx(j, i)] = val ? 1 : 0;
    }

    // number of active entries (both triangles)
    long long count() const {
        long long c = 0;
        for (char v : a_) c += v;
        return c;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<char> a_;
};

// f(A) = -log det A + Tr(SA); logdet comes from the caller's factorization.
// Tr(SA) is the full elementwise dot product, exact for symmetric inputs.
double f_smooth(const SymMatrix& a, const Problem& prob, double logdet);

// F(A) = f(A) + alpha * sum_ij |A[i][j]|
double f_total(const SymMatrix& a, const Problem& prob, double logdet);

// grad f(A) = S - W where W = A^-1 is supplied by the caller.
SymMatrix gradient(const SymMatrix& w, const Problem& prob);

// sign(x) * max(|x| - tau, 0)
double soft_threshold(double x, double tau);

// active[i][j] = (a[i][j] != 0) or (|g[i][j]| > alpha); exact zero test.
Mask free_set(const SymMatrix& a, const SymMatrix& g, double alpha);

// Entrywise minimum-magnitude element of the subdifferential of F:
// a[i][j] != 0 -> g[i][j] + alpha * sign(a[i][j]); else soft_threshold(g[i][j], alpha).
SymMatrix min_subgradient(const SymMatrix& a, const SymMatrix& g, double alpha);

struct Norms {
    double l1 = 0.0;
    double fro = 0.0;
    long long nnz = 0; // exact-nonzero count over all n^2 entries
};

Norms norms(const SymMatrix& m);

} // namespace glasso
