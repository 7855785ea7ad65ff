#include "glasso/objective.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace glasso {

namespace {

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

inline std::size_t count(const SymMatrix& m) {
    return static_cast<std::size_t>(m.n()) * static_cast<std::size_t>(m.n());
}

} // namespace

double f_smooth(const SymMatrix& a, const Problem& prob, double logdet) {
    if (a.n() != prob.s.n()) throw std::invalid_argument("f_smooth: dimension mismatch");
    const double* ad = a.data();
    const double* sd = prob.s.data();
    double tr = 0.0;
    for (std::size_t k = 0, kn = count(a); k < kn; ++k) tr += sd[k] * ad[k];
    return -logdet + tr;
}

double f_total(const SymMatrix& a, const Problem& prob, double logdet) {
    const double* ad = a.data();
    double l1 = 0.0;
    for (std::size_t k = 0, kn = count(a); k < kn; ++k) l1 += std::abs(ad[k]);
    return f_smooth(a, prob, logdet) + prob.alpha * l1;
}

SymMatrix gradient(const SymMatrix& w, const Problem& prob) {
    if (w.n() != prob.s.n()) throw std::invalid_argument("gradient: dimension mismatch");
    SymMatrix g(w.n());
    double* gd = g.data();
    const double* wd = w.data();
    const double* sd = prob.s.data();
    for (std::size_t k = 0, kn = count(w); k < kn; ++k) gd[k] = sd[k] - wd[k];
    return g;
}

double soft_threshold(double x, double tau) {
    const double mag = std::abs(x) - tau;
    return mag > 0.0 ? sign(x) * mag : 0.0;
}

Mask free_set(const SymMatrix& a, const SymMatrix& g, double alpha) {
    const int n = a.n();
    Mask m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (a(i, j) != 0.0 || std::abs(g(i, j)) > alpha) m.set(i, j, true);
    return m;
}

SymMatrix min_subgradient(const SymMatrix& a, const SymMatrix& g, double alpha) {
    const int n = a.n();
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double aij = a(i, j);
            const double gij = g(i, j);
            out.set(i, j, aij != 0.0 ? gij + alpha * sign(aij) : soft_threshold(gij, alpha));
        }
    return out;
}

Norms norms(const SymMatrix& m) {
    Norms out;
    const double* md = m.data();
    double fro2 = 0.0;
    for (std::size_t k = 0, kn = count(m); k < kn; ++k) {
        const double v = md[k];
        out.l1 += std::abs(v);
        fro2 += v * v;
        out.nnz += v != 0.0;
    }
    out.fro = std::sqrt(fro2);
    return out;
}

} // namespace glasso
