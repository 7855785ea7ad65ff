#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace glasso {

// Dense symmetric n-by-n matrix, full row-major storage with both triangles
// mirrored. Symmetry is maintained by construction: set() writes both (i,j)
// and (j,i); kernels that fill one triangle finish with mirror_lower().
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(int n) : n_(check_dim(n)), v_(static_cast<std::size_t>(n) * n, 0.0) {}

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.v_[m.idx(i, i)] = 1.0;
        return m;
    }

    static SymMatrix diagonal(const std::vector<double>& d) {
        SymMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m.v_[m.idx(i, i)] = d[static_cast<std::size_t>(i)];
        return m;
    }

    int n() const { return n_; }

    double operator()(int i, int j) const { return v_[idx(i, j)]; }

    void set(int i, int j, double val) {
        v_[idx(i, j)] = val;
        v_[idx(j, i)] = val;
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    // copy the lower triangle (i >= j) onto the upper one
    void mirror_lower() {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j) v_[idx(j, i)] = v_[idx(i, j)];
    }

    bool operator==(const SymMatrix&) const = default;

private:
    static int check_dim(int n) {
        if (n < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
        return n;
    }

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<double> v_;
};

} // namespace glasso
