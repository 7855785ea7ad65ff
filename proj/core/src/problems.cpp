#include "glasso/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "glasso/errors.hpp"
#include "glasso/linalg.hpp"
#include "glasso/rng.hpp"

namespace glasso {

namespace {

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// 3x3 in-circumcircle determinant; positive when d lies strictly inside the
// circumcircle of the CCW triangle (a, b, c)
double incircle_det(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad2 = adx * adx + ady * ady;
    const double bd2 = bdx * bdx + bdy * bdy;
    const double cd2 = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) + ad2 * (bdx * cdy - cdx * bdy);
}

constexpr double kIncircleTol = 1e-12;

} // namespace

const char* to_string(GraphKind k) {
    switch (k) {
        case GraphKind::Chain: return "chain";
        case GraphKind::Random: return "random";
        case GraphKind::Planar: return "planar";
    }
    return "?";
}

SymMatrix gen_chain(int n) {
    if (n < 2) throw std::invalid_argument("gen_chain: n must be >= 2");
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        a.set(i, i, 1.0);
        if (i + 1 < n) a.set(i, i + 1, -0.5);
    }
    return a;
}

namespace detail {

SymMatrix utu_clamped(const std::vector<double>& u, int n, long long* clamped_count) {
    SymMatrix p(n);
    double* pd = p.data();
    // U^T U accumulated over rows of U; each row contributes the outer
    // product of its (sparse) support with itself
    std::vector<int> support;
    support.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double* urow = u.data() + static_cast<std::size_t>(k) * n;
        support.clear();
        for (int j = 0; j < n; ++j)
            if (urow[j] != 0.0) support.push_back(j);
        for (int i : support)
            for (int j : support)
                if (j <= i) pd[static_cast<std::size_t>(i) * n + j] += urow[i] * urow[j];
    }
    long long clamps = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v = pd[static_cast<std::size_t>(i) * n + j];
            if (std::abs(v) > 1.0) {
                v = v > 0.0 ? 1.0 : -1.0;
                pd[static_cast<std::size_t>(i) * n + j] = v;
                clamps += 2; // both mirrored entries
            }
        }
    p.mirror_lower();
    if (clamped_count) *clamped_count = clamps;
    return p;
}

} // namespace detail

SymMatrix gen_random(int n, double target_density, std::uint64_t seed, long long* clamped_count) {
    if (!(target_density > 0.0 && target_density < 1.0))
        throw std::invalid_argument("gen_random: target_density must be in (0, 1)");
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    // one fixed pool of uniforms: entry k is included iff inc[k] < p, so the
    // support grows monotonically with p and bisection on p is well posed
    Rng rng(seed);
    std::vector<double> inc(nn), sgn(nn);
    for (auto& x : inc) x = rng.uniform();
    for (auto& x : sgn) x = rng.uniform();

    std::vector<double> u(nn);
    const double denom = static_cast<double>(n) * n - n;
    double lo = 0.0, hi = 0.5;
    for (int round = 0; round < 40; ++round) {
        const double p = 0.5 * (lo + hi);
        for (std::size_t k = 0; k < nn; ++k) u[k] = inc[k] < p ? (sgn[k] < 0.5 ? -1.0 : 1.0) : 0.0;
        long long clamps = 0;
        SymMatrix utu = detail::utu_clamped(u, n, &clamps);
        long long off_nnz = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) off_nnz += utu(i, j) != 0.0 ? 2 : 0;
        const double frac = static_cast<double>(off_nnz) / denom;
        if (std::abs(frac - target_density) <= 0.2 * target_density) {
            if (clamped_count) *clamped_count = clamps;
            return utu;
        }
        (frac < target_density ? lo : hi) = p;
    }
    throw DensityUnreachable("gen_random: bisection failed to reach off-diagonal density " +
                             std::to_string(target_density) + " within 40 rounds (n=" +
                             std::to_string(n) + ")");
}

std::vector<Triangle> delaunay_triangulate(const std::vector<Point2>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw std::invalid_argument("delaunay_triangulate: need at least 3 points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pts[static_cast<std::size_t>(i)].x == pts[static_cast<std::size_t>(j)].x &&
                pts[static_cast<std::size_t>(i)].y == pts[static_cast<std::size_t>(j)].y)
                throw std::invalid_argument("delaunay_triangulate: duplicate point");

    // working copy plus a super-triangle ~10x the unit square
    std::vector<Point2> v(pts);
    v.push_back({-10.0, -10.0});
    v.push_back({21.0, -10.0});
    v.push_back({0.5, 21.0});

    auto ccw = [&](Triangle t) {
        if (orient2d(v[static_cast<std::size_t>(t.a)], v[static_cast<std::size_t>(t.b)],
                     v[static_cast<std::size_t>(t.c)]) < 0.0)
            std::swap(t.b, t.c);
        return t;
    };

    std::vector<Triangle> tris{ccw({n, n + 1, n + 2})};
    std::vector<std::pair<int, int>> boundary;

    for (int p = 0; p < n; ++p) {
        const Point2& pt = v[static_cast<std::size_t>(p)];

        // cavity: triangles whose circumcircle strictly contains pt
        // (|det| <= tol counts as outside, so near-cocircular ties keep the
        // triangles created by earlier insertions)
        std::vector<Triangle> keep;
        boundary.clear();
        auto add_edge = [&](int x, int y) {
            const auto e = std::minmax(x, y);
            const auto it = std::find(boundary.begin(), boundary.end(), std::make_pair(e.first, e.second));
            if (it != boundary.end())
                boundary.erase(it); // shared by two cavity triangles: interior edge
            else
                boundary.emplace_back(e.first, e.second);
        };
        for (const Triangle& t : tris) {
            if (incircle_det(v[static_cast<std::size_t>(t.a)], v[static_cast<std::size_t>(t.b)],
                             v[static_cast<std::size_t>(t.c)], pt) > kIncircleTol) {
                add_edge(t.a, t.b);
                add_edge(t.b, t.c);
                add_edge(t.c, t.a);
            } else {
                keep.push_back(t);
            }
        }
        tris = std::move(keep);
        for (const auto& [x, y] : boundary) tris.push_back(ccw({x, y, p}));
    }

    std::vector<Triangle> out;
    for (const Triangle& t : tris)
        if (t.a < n && t.b < n && t.c < n) out.push_back(t);
    return out;
}

SymMatrix gen_planar(int n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_planar: n must be >= 3");
    Rng rng(seed);
    std::vector<Point2> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    const auto tris = delaunay_triangulate(pts);

    SymMatrix lap(n);
    auto mark = [&](int i, int j) {
        if (lap(i, j) == 0.0) lap.set(i, j, -1.0);
    };
    for (const Triangle& t : tris) {
        mark(t.a, t.b);
        mark(t.b, t.c);
        mark(t.a, t.c);
    }
    for (int i = 0; i < n; ++i) {
        double deg = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i && lap(i, j) != 0.0) deg += 1.0;
        lap.set(i, i, deg);
    }
    return lap;
}

std::pair<SymMatrix, double> spd_shift(const SymMatrix& m) {
    const auto ext = eig_extremes(m, 1e-6, std::max(10 * m.n(), 200));
    const double shift = std::max(-1.2 * ext.lambda_min, 0.1);
    SymMatrix out = m;
    for (int i = 0; i < m.n(); ++i) out.set(i, i, m(i, i) + shift);
    return {std::move(out), shift};
}

SampleSet sample_mvn(const GroundTruth& truth, int m, std::uint64_t seed) {
    const int n = truth.precision.n();
    if (m < 1) throw std::invalid_argument("sample_mvn: m must be >= 1");
    const auto f = cholesky(truth.precision);
    if (!f) throw std::invalid_argument("sample_mvn: precision matrix is not positive definite");

    SampleSet out;
    out.n = n;
    out.m = m;
    out.seed = seed;
    out.samples.resize(static_cast<std::size_t>(m) * n);
    Rng rng(seed);
    for (int i = 0; i < m; ++i) {
        double* row = out.samples.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] = rng.normal();
        f->solve_lower_transposed(row); // L^T y = z  =>  cov(y) = (L L^T)^-1
    }
    return out;
}

SymMatrix empirical_cov(const SampleSet& samples) {
    const int n = samples.n;
    const int m = samples.m;
    if (m < 1) throw std::invalid_argument("empirical_cov: need at least one sample");

    std::vector<double> mu(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) mu[static_cast<std::size_t>(j)] += samples(i, j);
    for (auto& x : mu) x /= m;

    SymMatrix s(n);
    double* sd = s.data();
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = samples(i, j) - mu[static_cast<std::size_t>(j)];
        for (int j = 0; j < n; ++j) {
            const double cj = c[static_cast<std::size_t>(j)];
            double* srow = sd + static_cast<std::size_t>(j) * n;
            for (int k = 0; k <= j; ++k) srow[k] += cj * c[static_cast<std::size_t>(k)];
        }
    }
    const double invm = 1.0 / m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) sd[static_cast<std::size_t>(i) * n + j] *= invm;
    s.mirror_lower();
    return s;
}

SymMatrix standardize(const SymMatrix& s) {
    const int n = s.n();
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v = s(i, i);
        if (v <= 1e-12)
            throw ZeroVariance("standardize: variable " + std::to_string(i) + " has (near-)zero variance");
        d[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(v);
    }
    SymMatrix out(n);
    for (int i = 0; i < n; ++i) {
        out.set(i, i, 1.0); // exactly 1 by contract
        for (int j = 0; j < i; ++j)
            out.set(i, j, s(i, j) * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)]);
    }
    return out;
}

} // namespace glasso
