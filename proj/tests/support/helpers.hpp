#pragma once

// Small doctest-side conveniences shared by the unit suites.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include <glasso/sym_matrix.hpp>

namespace testsupport {

// Build a SymMatrix from row literals; throws if the literal is not symmetric.
inline glasso::SymMatrix sym(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> dense;
    dense.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("sym: ragged literal");
        dense.insert(dense.end(), row.begin(), row.end());
    }
    glasso::SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double lo = dense[static_cast<std::size_t>(i) * n + j];
            const double hi = dense[static_cast<std::size_t>(j) * n + i];
            if (lo != hi) throw std::invalid_argument("sym: asymmetric literal");
            m.set(i, j, lo);
        }
    return m;
}

inline double max_abs_diff(const glasso::SymMatrix& a, const glasso::SymMatrix& b) {
    double d = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

inline double max_abs(const glasso::SymMatrix& a) {
    double d = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) d = std::max(d, std::abs(a(i, j)));
    return d;
}

} // namespace testsupport
