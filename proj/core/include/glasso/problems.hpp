#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "glasso/sym_matrix.hpp"

namespace glasso {

enum class GraphKind { Chain, Random, Planar };

const char* to_string(GraphKind k);

// Ground-truth precision matrix after the SPD shift.
struct GroundTruth {
    SymMatrix precision;
    GraphKind kind = GraphKind::Chain;
    double shift = 0.0;
    std::uint64_t seed = 0;
};

// m samples of dimension n, row-major.
struct SampleSet {
    int n = 0;
    int m = 0;
    std::vector<double> samples;
    std::uint64_t seed = 0;

    double operator()(int i, int j) const {
        return samples[static_cast<std::size_t>(i) * n + j];
    }
};

// Tridiagonal chain precision: diagonal 1, sub/super-diagonal -0.5 (pre-shift).
SymMatrix gen_chain(int n);

// U^T U from a sparse +-1 matrix U, off-diagonal magnitudes clamped to 1,
// with U's fill tuned by bisection until the off-diagonal nonzero fraction is
// within 20% relative of target_density (pre-shift). Throws DensityUnreachable
// after 40 rounds. clamped_count (optional) reports how many entries the
// clamp touched.
SymMatrix gen_random(int n, double target_density, std::uint64_t seed,
                     long long* clamped_count = nullptr);

// Graph Laplacian of the Delaunay triangulation of n uniform points in the
// unit square (pre-shift): PSD, zero row sums, off-diagonals in {0, -1}.
SymMatrix gen_planar(int n, std::uint64_t seed);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Triangle {
    int a = 0;
    int b = 0;
    int c = 0;
};

// Bowyer-Watson Delaunay triangulation. Exposed so the empty-circumcircle
// property is checkable against an independent oracle. Throws
// std::invalid_argument on exact duplicate points or fewer than 3 points.
std::vector<Triangle> delaunay_triangulate(const std::vector<Point2>& pts);

// m + shift*I with shift = max(-1.2 * lambda_min(m), 0.1).
std::pair<SymMatrix, double> spd_shift(const SymMatrix& m);

// Draws z ~ N(0, I) and solves L^T y = z where precision = L L^T, so
// cov(y) = precision^-1; mean zero. Bit-reproducible from (truth, m, seed).
SampleSet sample_mvn(const GroundTruth& truth, int m, std::uint64_t seed);

// Mean-centered second-moment matrix with 1/m normalization (the MLE form,
// not the unbiased 1/(m-1)).
SymMatrix empirical_cov(const SampleSet& samples);

// Correlation matrix s[i][j] / sqrt(s[i][i] * s[j][j]); diagonal exactly 1.
// Throws ZeroVariance if any diagonal entry <= 1e-12.
SymMatrix standardize(const SymMatrix& s);

namespace detail {
// U^T U with off-diagonal clamping, U given dense row-major (entries in
// {-1, 0, +1}). Split out so the clamping and Gram-matrix structure are
// testable on hand-built U.
SymMatrix utu_clamped(const std::vector<double>& u, int n, long long* clamped_count);
} // namespace detail

} // namespace glasso
