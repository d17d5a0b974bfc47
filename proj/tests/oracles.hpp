#pragma once
// Independent oracles used by the test suites: quadrature, brute-force
// searches and rasterized measures. None of these share code with the
// implementation paths they check.

#include "safepath/geometry.hpp"
#include "safepath/region.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracles {

using safepath::geometry::EuclidPoint;

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double eps,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps = 1e-14, int depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, eps, depth);
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

/// O(V^2) Dijkstra over an 8-connected grid, lengths derived from step
/// counts exactly like the implementation contract requires.
inline std::vector<double> brute_dijkstra(int nx, int ny, const std::vector<uint8_t>& blocked,
                                          int goal_x, int goal_y, double cell) {
    const int n = nx * ny;
    const double diag = cell * std::sqrt(2.0);
    std::vector<int> straights(n, 0), diagonals(n, 0);
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<uint8_t> done(n, 0);
    const int goal = goal_y * nx + goal_x;
    if (blocked[goal]) return dist;
    dist[goal] = 0.0;
    static const int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    for (int iter = 0; iter < n; ++iter) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            if (!done[i] && dist[i] < bd) {
                bd = dist[i];
                best = i;
            }
        if (best < 0) break;
        done[best] = 1;
        const int cx = best % nx, cy = best / nx;
        for (int k = 0; k < 8; ++k) {
            const int x = cx + dx[k], y = cy + dy[k];
            if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
            const int idx = y * nx + x;
            if (done[idx] || blocked[idx]) continue;
            const int ns = straights[best] + (k < 4 ? 1 : 0);
            const int nd = diagonals[best] + (k < 4 ? 0 : 1);
            const double cand = ns * cell + nd * diag;
            if (cand < dist[idx]) {
                dist[idx] = cand;
                straights[idx] = ns;
                diagonals[idx] = nd;
            }
        }
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Rasterized region measures
// ---------------------------------------------------------------------------

/// Grid-rasterized area of a region over a bounding box.
inline double raster_area(const safepath::geometry::Region& r, EuclidPoint lo, EuclidPoint hi,
                          int cells_per_axis = 400) {
    const double dx = (hi.x - lo.x) / cells_per_axis;
    const double dy = (hi.y - lo.y) / cells_per_axis;
    long hits = 0;
    for (int iy = 0; iy < cells_per_axis; ++iy)
        for (int ix = 0; ix < cells_per_axis; ++ix) {
            const EuclidPoint p{lo.x + (ix + 0.5) * dx, lo.y + (iy + 0.5) * dy};
            if (safepath::geometry::point_in(r, p)) ++hits;
        }
    return hits * dx * dy;
}

/// Rasterized subset check: every sample of `inner` lies in `outer`.
inline bool raster_subset(const safepath::geometry::Region& inner,
                          const safepath::geometry::Region& outer, EuclidPoint lo, EuclidPoint hi,
                          int cells_per_axis = 250) {
    const double dx = (hi.x - lo.x) / cells_per_axis;
    const double dy = (hi.y - lo.y) / cells_per_axis;
    for (int iy = 0; iy < cells_per_axis; ++iy)
        for (int ix = 0; ix < cells_per_axis; ++ix) {
            const EuclidPoint p{lo.x + (ix + 0.5) * dx, lo.y + (iy + 0.5) * dy};
            if (safepath::geometry::point_in(inner, p) &&
                !safepath::geometry::point_in(outer, p))
                return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Random shapes
// ---------------------------------------------------------------------------

/// Random convex polygon with the vertex centroid at the origin.
inline std::vector<EuclidPoint> random_convex_polygon(std::mt19937_64& rng, int min_v = 5,
                                                      int max_v = 12, double scale = 1.0) {
    std::uniform_int_distribution<int> nv(min_v, max_v);
    std::uniform_real_distribution<double> ur(0.4, 1.0);
    const int n = nv(rng);
    std::vector<double> angles(n);
    std::uniform_real_distribution<double> ua(0.0, safepath::geometry::kTwoPi);
    for (auto& a : angles) a = ua(rng);
    std::sort(angles.begin(), angles.end());
    // enforce distinct angles
    for (int i = 1; i < n; ++i)
        if (angles[i] - angles[i - 1] < 1e-3) angles[i] = angles[i - 1] + 1e-3;
    if (angles.back() >= safepath::geometry::kTwoPi) return random_convex_polygon(rng, min_v, max_v, scale);
    const double r = ur(rng) * scale;
    std::vector<EuclidPoint> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {r * std::cos(angles[i]), r * std::sin(angles[i])};
    // points on a circle are convex; recenter on the vertex centroid
    EuclidPoint c{0, 0};
    for (const auto& p : pts) c = c + p;
    c = (1.0 / n) * c;
    for (auto& p : pts) p = p - c;
    return pts;
}

/// Kolmogorov-Smirnov statistic of sorted samples against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

} // namespace oracles
