#include "safepath/geometry.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace safepath::geometry;

namespace {

// Brute-force support-point oracle: scan every boundary vertex for the
// extremal perpendicular offset under the sweep direction.
std::vector<EuclidPoint> brute_support(const std::vector<EuclidPoint>& verts, double dir,
                                       bool maximize) {
    const EuclidPoint n{-std::sin(dir), std::cos(dir)};
    double best = maximize ? -1e300 : 1e300;
    for (const auto& p : verts) {
        const double v = dot(n, p);
        best = maximize ? std::max(best, v) : std::min(best, v);
    }
    std::vector<EuclidPoint> out;
    for (const auto& p : verts)
        if (std::abs(dot(n, p) - best) <= 1e-9) out.push_back(p);
    return out;
}

bool same_point_set(std::vector<EuclidPoint> a, std::vector<EuclidPoint> b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    auto less = [](EuclidPoint p, EuclidPoint q) { return p.x != q.x ? p.x < q.x : p.y < q.y; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (distance(a[i], b[i]) > tol) return false;
    return true;
}

} // namespace

TEST(PolarEuclid, AxisAlignedAndDiagonal) {
    EXPECT_NEAR(polar_to_euclid({0.0, 1.0}).x, 1.0, 1e-15);
    EXPECT_NEAR(polar_to_euclid({0.0, 1.0}).y, 0.0, 1e-15);
    const auto p2 = polar_to_euclid({kPi / 2.0, 2.0});
    EXPECT_NEAR(p2.x, 0.0, 1e-12);
    EXPECT_NEAR(p2.y, 2.0, 1e-12);
    const auto p3 = polar_to_euclid({kPi / 4.0, std::sqrt(2.0)});
    EXPECT_NEAR(p3.x, 1.0, 1e-12);
    EXPECT_NEAR(p3.y, 1.0, 1e-12);
}

TEST(PolarEuclid, QuadrantResolution) {
    const auto a = euclid_to_polar({1.0, 0.0});
    EXPECT_NEAR(a.angle, 0.0, 1e-15);
    EXPECT_NEAR(a.radius, 1.0, 1e-15);
    const auto b = euclid_to_polar({-1.0, 0.0});
    EXPECT_NEAR(b.angle, kPi, 1e-15);
    const auto c = euclid_to_polar({1.0, 1.0});
    EXPECT_NEAR(c.angle, kPi / 4.0, 1e-15);
    EXPECT_NEAR(c.radius, std::sqrt(2.0), 1e-15);
    const auto o = euclid_to_polar({0.0, 0.0});
    EXPECT_EQ(o.angle, 0.0);
    EXPECT_EQ(o.radius, 0.0);
}

TEST(PolarEuclid, RoundTripProperty) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> rad(0.0, 1e6);
    for (int i = 0; i < 10000; ++i) {
        const PolarPoint p{ang(rng), rad(rng)};
        const PolarPoint q = euclid_to_polar(polar_to_euclid(p));
        const EuclidPoint pe = polar_to_euclid(p);
        const EuclidPoint qe = polar_to_euclid(q);
        EXPECT_LT(distance(pe, qe), 1e-9 * std::max(1.0, p.radius));
    }
}

TEST(Footprint, Validation) {
    EXPECT_THROW(Footprint::from_vertices({{0, 0}, {1, 0}}), std::invalid_argument);
    // collinear: zero area
    EXPECT_THROW(Footprint::from_vertices({{-1, 0}, {0, 0}, {1, 0}}), std::invalid_argument);
    // off-center
    EXPECT_THROW(Footprint::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                 std::invalid_argument);
    const auto disc = Footprint::circle(1.0, 360);
    EXPECT_TRUE(disc.is_star_shaped());
    EXPECT_NEAR(disc.area(), kPi, 0.01 * kPi);
    const auto rect = Footprint::rectangle(2.0, 1.0);
    EXPECT_NEAR(rect.area(), 2.0, 1e-12);
}

TEST(SupportPoints, UnitDiscCollapsedCone) {
    const auto disc = Footprint::circle(1.0, 360);
    const auto sp = support_points(disc, 0.0, 0.0);
    ASSERT_FALSE(sp.a.empty());
    ASSERT_FALSE(sp.b.empty());
    for (const auto& p : sp.a) EXPECT_LT(distance(p, {0.0, 1.0}), 0.02);
    for (const auto& p : sp.b) EXPECT_LT(distance(p, {0.0, -1.0}), 0.02);
}

TEST(SupportPoints, SquareEdgeTangency) {
    const auto square = Footprint::rectangle(1.0, 1.0);
    const auto sp = support_points(square, 0.0, 0.0);
    // sweep along +x: the whole top and bottom edges are tangent
    EXPECT_TRUE(same_point_set(sp.a, {{0.5, 0.5}, {-0.5, 0.5}}));
    EXPECT_TRUE(same_point_set(sp.b, {{0.5, -0.5}, {-0.5, -0.5}}));
}

TEST(SupportPoints, MatchesBruteForceOnRandomConvexPolygons) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.0, kTwoPi);
    for (int i = 0; i < 1000; ++i) {
        const auto verts = oracles::random_convex_polygon(rng);
        const auto fp = Footprint::from_vertices(verts);
        const double hi = ua(rng);
        const double lo = ua(rng);
        const auto sp = support_points(fp, hi, lo);
        EXPECT_TRUE(same_point_set(sp.a, brute_support(verts, hi, true)));
        EXPECT_TRUE(same_point_set(sp.b, brute_support(verts, lo, false)));
    }
}

TEST(SplitBoundary, DiscSemicircles) {
    const auto disc = Footprint::circle(1.0, 360);
    const auto [f, g] = split_boundary(disc, {0.0, 1.0}, {0.0, -1.0});
    // f: CCW from (0,1) to (0,-1) = left semicircle (x <= 0)
    for (const auto& s : f.samples) {
        const EuclidPoint p = s.dist * unit(s.deg);
        EXPECT_LE(p.x, 1e-9);
    }
    for (const auto& s : g.samples) {
        const EuclidPoint p = s.dist * unit(s.deg);
        EXPECT_GE(p.x, -1e-9);
    }
    // together they cover the boundary
    EXPECT_EQ(f.samples.size() + g.samples.size(), 360u + 2u);
}

TEST(SplitBoundary, SquareOppositeCorners) {
    const auto square = Footprint::rectangle(2.0, 2.0);
    const auto [f, g] = split_boundary(square, {1.0, 1.0}, {-1.0, -1.0});
    // polygon walk oracle: two L-shaped chains of two edges each
    EXPECT_EQ(f.samples.size(), 3u); // corner, corner, corner
    EXPECT_EQ(g.samples.size(), 3u);
    EXPECT_LT(distance(f.begin_point, {1.0, 1.0}), 1e-12);
    EXPECT_LT(distance(f.end_point, {-1.0, -1.0}), 1e-12);
}

TEST(SplitBoundary, TriangleEdgeMidpoint) {
    // equilateral-ish triangle centered on its vertex centroid
    const std::vector<EuclidPoint> v{{1.0, 0.0},
                                     {-0.5, std::sqrt(3.0) / 2.0},
                                     {-0.5, -std::sqrt(3.0) / 2.0}};
    const auto tri = Footprint::from_vertices(v);
    const EuclidPoint mid = 0.5 * (v[1] + v[2]); // midpoint of the far edge
    const auto [f, g] = split_boundary(tri, v[0], mid);
    // chains of 1.5 edges each: vertex->vertex->midpoint and midpoint->vertex->vertex
    EXPECT_EQ(f.samples.size(), 3u);
    EXPECT_EQ(g.samples.size(), 3u);
}

TEST(SplitBoundary, DegenerateSplitRejected) {
    const auto disc = Footprint::circle(1.0, 88);
    EXPECT_THROW(split_boundary(disc, {0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
}

namespace {

BoundaryCurve make_curve(const std::vector<double>& degs, const std::vector<double>& dists) {
    BoundaryCurve c;
    for (std::size_t i = 0; i < degs.size(); ++i) c.samples.push_back({degs[i], dists[i]});
    c.begin_point = dists.front() * unit(degs.front());
    c.end_point = dists.back() * unit(degs.back());
    return c;
}

// Brute-force window extremum oracle over discrete samples: locate the
// first and last strict interior local extrema and fill with the window
// extremum between them.
std::vector<double> brute_envelope(std::vector<double> d, bool want_max) {
    const std::size_t m = d.size();
    std::size_t first = m, last = 0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const bool anchor = want_max ? (d[i] > d[i - 1] && d[i] > d[i + 1])
                                     : (d[i] < d[i - 1] && d[i] < d[i + 1]);
        if (anchor) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    if (first < last) {
        double ext = d[first];
        for (std::size_t i = first; i <= last; ++i)
            ext = want_max ? std::max(ext, d[i]) : std::min(ext, d[i]);
        for (std::size_t i = first; i <= last; ++i) d[i] = ext;
    }
    return d;
}

} // namespace

TEST(RadialEnvelope, MonotoneCurveUnchanged) {
    const auto c = make_curve({0.0, 0.2, 0.4, 0.6}, {1.0, 1.2, 1.5, 2.0});
    const auto e = radial_envelope(c, EnvelopeMode::Max);
    for (std::size_t i = 0; i < c.samples.size(); ++i)
        EXPECT_EQ(e.samples[i].dist, c.samples[i].dist);
}

TEST(RadialEnvelope, InteriorDipFilledInMaxMode) {
    // rises to 1.5, dips to 0.8, rises to 1.4, falls: window max = 1.5
    const auto c = make_curve({0.0, 0.1, 0.2, 0.3, 0.4, 0.5},
                              {1.0, 1.5, 0.8, 1.4, 1.2, 1.0});
    const auto e = radial_envelope(c, EnvelopeMode::Max);
    const auto expect = brute_envelope({1.0, 1.5, 0.8, 1.4, 1.2, 1.0}, true);
    for (std::size_t i = 0; i < e.samples.size(); ++i)
        EXPECT_DOUBLE_EQ(e.samples[i].dist, expect[i]) << "sample " << i;
    // the dip itself is filled flat
    EXPECT_DOUBLE_EQ(e.samples[2].dist, 1.5);
}

TEST(RadialEnvelope, InteriorBumpFlattenedInMinMode) {
    const auto c = make_curve({0.0, 0.1, 0.2, 0.3, 0.4, 0.5},
                              {1.5, 1.0, 1.6, 0.9, 1.1, 1.5});
    const auto e = radial_envelope(c, EnvelopeMode::Min);
    const auto expect = brute_envelope({1.5, 1.0, 1.6, 0.9, 1.1, 1.5}, false);
    for (std::size_t i = 0; i < e.samples.size(); ++i)
        EXPECT_DOUBLE_EQ(e.samples[i].dist, expect[i]) << "sample " << i;
    EXPECT_DOUBLE_EQ(e.samples[2].dist, 0.9);
}

TEST(RadialEnvelope, IdempotentAndDominates) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ud(0.5, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> degs, dists;
        for (int i = 0; i < 24; ++i) {
            degs.push_back(0.05 * i);
            dists.push_back(ud(rng));
        }
        const auto c = make_curve(degs, dists);
        for (const auto mode : {EnvelopeMode::Max, EnvelopeMode::Min}) {
            const auto e1 = radial_envelope(c, mode);
            const auto e2 = radial_envelope(e1, mode);
            for (std::size_t i = 0; i < e1.samples.size(); ++i) {
                EXPECT_EQ(e1.samples[i].dist, e2.samples[i].dist);
                if (mode == EnvelopeMode::Max)
                    EXPECT_GE(e1.samples[i].dist, c.samples[i].dist);
                else
                    EXPECT_LE(e1.samples[i].dist, c.samples[i].dist);
            }
        }
    }
}

TEST(RadialEnvelope, EmptyCurveRejected) {
    BoundaryCurve empty;
    EXPECT_THROW(radial_envelope(empty, EnvelopeMode::Max), std::invalid_argument);
}

TEST(TransformCurve, ZeroDisplacementIdentity) {
    const auto disc = Footprint::circle(1.0, 88); // multiple of 4: (0,1) is a vertex
    const auto [f, g] = split_boundary(disc, {0.0, 1.0}, {0.0, -1.0});
    const auto t = transform_curve(g, {0.0, 0.0}, {0.0, 0.0});
    ASSERT_EQ(t.samples.size(), g.samples.size());
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        EXPECT_NEAR(t.samples[i].dist, g.samples[i].dist, 1e-12);
        EXPECT_NEAR(std::remainder(t.samples[i].deg - g.samples[i].deg, kTwoPi), 0.0, 1e-12);
    }
}

TEST(TransformCurve, SemicircleTranslation) {
    const auto disc = Footprint::circle(1.0, 180);
    const auto [f, g] = split_boundary(disc, {0.0, 1.0}, {0.0, -1.0});
    const auto t = transform_curve(g, {0.0, 0.0}, {0.0, 1.0}); // +x by 1
    // per-point vector-addition oracle
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        const EuclidPoint src = g.samples[i].dist * unit(g.samples[i].deg);
        const EuclidPoint expect{src.x + 1.0, src.y};
        const EuclidPoint got = t.samples[i].dist * unit(t.samples[i].deg);
        EXPECT_LT(distance(expect, got), 1e-12);
    }
}

TEST(TransformCurve, PointCurveHandVectorAddition) {
    BoundaryCurve c;
    c.samples.push_back({0.0, 0.0});
    c.begin_point = c.end_point = {0.0, 0.0};
    const auto t = transform_curve(c, {0.0, 1.0}, {kPi / 2.0, 1.0});
    ASSERT_EQ(t.samples.size(), 1u);
    EXPECT_NEAR(t.samples[0].deg, kPi / 4.0, 1e-12);
    EXPECT_NEAR(t.samples[0].dist, std::sqrt(2.0), 1e-12);
}

TEST(TransformCurve, RigidTranslationPreservesPairwiseDistances) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(0.0, kTwoPi);
    std::uniform_real_distribution<double> ur(0.1, 5.0);
    const auto disc = Footprint::circle(1.0, 64);
    const auto [f, g] = split_boundary(disc, {0.0, 1.0}, {0.0, -1.0});
    for (int trial = 0; trial < 100; ++trial) {
        const PolarPoint pose{ua(rng), ur(rng)};
        const PolarPoint disp{ua(rng), ur(rng)};
        const auto t = transform_curve(g, pose, disp);
        for (std::size_t i = 1; i < t.samples.size(); ++i) {
            const EuclidPoint a0 = g.samples[i - 1].dist * unit(g.samples[i - 1].deg);
            const EuclidPoint a1 = g.samples[i].dist * unit(g.samples[i].deg);
            const EuclidPoint b0 = t.samples[i - 1].dist * unit(t.samples[i - 1].deg);
            const EuclidPoint b1 = t.samples[i].dist * unit(t.samples[i].deg);
            EXPECT_NEAR(distance(a0, a1), distance(b0, b1), 1e-9);
        }
    }
}
