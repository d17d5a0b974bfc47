#include "safepath/safezone.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace safepath;
using namespace safepath::safezone;
using geometry::EuclidPoint;
using geometry::Footprint;
using geometry::kPi;
using geometry::kTwoPi;
using prediction::ObjectState;

namespace {

ObjectState make_state(EuclidPoint pos, double dir, double speed, double sigma_v,
                       double sigma_d, bool deterministic) {
    ObjectState s;
    s.pose = geometry::euclid_to_polar(pos);
    s.expected_direction = geometry::normalize_angle(dir);
    s.expected_speed = speed;
    s.deterministic = deterministic;
    if (!deterministic) {
        s.speed_model = {speed, sigma_v};
        s.direction_model = {s.expected_direction, sigma_d, true};
    } else {
        s.direction_model.moving = speed > 0.0;
    }
    return s;
}

// every vertex and edge midpoint of the placed footprint must be inside
bool placement_inside(const SafeZone& z, const Footprint& fp, EuclidPoint center) {
    const auto ring = fp.placed_at(center);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (!z.contains(ring[i])) return false;
        const EuclidPoint mid = 0.5 * (ring[i] + ring[(i + 1) % ring.size()]);
        if (!z.contains(mid)) return false;
    }
    return true;
}

} // namespace

TEST(BuildSafeZone, StaticDeterministicDiscIsTheDiscItself) {
    const auto disc = Footprint::circle(1.0, 180);
    const auto s = make_state({3.0, 2.0}, 0.0, 0.0, 0.0, 0.0, true);
    const auto z = build_safe_zone(s, disc, 2.0);
    EXPECT_EQ(z.construction, ZoneConstruction::DeterministicSwept);
    EXPECT_NEAR(geometry::region_area(z.region), kPi, 0.01 * kPi);
    EXPECT_TRUE(z.contains({3.0, 2.0}));
    EXPECT_TRUE(z.contains({3.9, 2.0}));
    EXPECT_FALSE(z.contains({4.1, 2.0}));
}

TEST(BuildSafeZone, DeterministicSweptStadium) {
    const auto disc = Footprint::circle(1.0, 180);
    const auto s = make_state({0.0, 0.0}, 0.0, 1.0, 0.0, 0.0, true);
    const auto z = build_safe_zone(s, disc, 2.0);
    // swept stadium: disc area + 2 x 1 rectangle
    EXPECT_NEAR(geometry::region_area(z.region), kPi + 2.0, 0.01 * (kPi + 2.0));
    // rasterized hull-area oracle
    const double raster = oracles::raster_area(z.region, {-1.5, -1.5}, {2.5, 1.5}, 500);
    EXPECT_NEAR(raster, kPi + 2.0, 0.02 * (kPi + 2.0));
    // contains both end placements
    EXPECT_TRUE(placement_inside(z, disc, {0.0, 0.0}));
    EXPECT_TRUE(placement_inside(z, disc, {1.0, 0.0}));
}

TEST(BuildSafeZone, NonStarFootprintRejected) {
    // U-shaped polygon whose vertex centroid sees the boundary twice
    std::vector<EuclidPoint> u{{-3, -1}, {3, -1}, {3, 1}, {1, 1}, {1, -0.5},
                               {-1, -0.5}, {-1, 1}, {-3, 1}};
    EuclidPoint c{0, 0};
    for (const auto& p : u) c = c + p;
    c = (1.0 / static_cast<double>(u.size())) * c;
    for (auto& p : u) p = p - c;
    const auto fp = Footprint::from_vertices(u);
    ASSERT_FALSE(fp.is_star_shaped());
    const auto s = make_state({0.0, 0.0}, 0.0, 1.0, 0.1, 0.1, false);
    EXPECT_THROW(build_safe_zone(s, fp, 2.0), std::invalid_argument);
}

TEST(BuildSafeZone, ProbabilisticZoneContainsSweptStadiumStrictly) {
    const auto disc = Footprint::circle(1.0, 96);
    const auto det = build_safe_zone(make_state({0, 0}, 0.0, 1.0, 0, 0, true), disc, 2.0);
    const auto prob =
        build_safe_zone(make_state({0, 0}, 0.0, 1.0, 0.1, 0.1, false), disc, 2.0);
    EXPECT_EQ(prob.construction, ZoneConstruction::ProbabilisticEnvelope);
    EXPECT_TRUE(oracles::raster_subset(det.region, prob.region, {-2, -2}, {3, 2}, 300));
    EXPECT_GT(geometry::region_area(prob.region), geometry::region_area(det.region) + 1e-3);
}

TEST(BuildSafeZone, MonteCarloContainmentOfTruncatedErrors) {
    const auto disc = Footprint::circle(1.0, 96);
    const double sigma_v = 0.1, sigma_d = 0.1, z_conf = 2.0, v = 1.0, d = 0.3;
    const auto s = make_state({1.0, -0.5}, d, v, sigma_v, sigma_d, false);
    const auto zone = build_safe_zone(s, disc, z_conf);
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uv(-z_conf * sigma_v, z_conf * sigma_v);
    std::uniform_real_distribution<double> ud(-z_conf * sigma_d, z_conf * sigma_d);
    int escapes = 0;
    for (int i = 0; i < 10000; ++i) {
        const double dv = std::max(uv(rng), -v);
        const double dth = ud(rng);
        const EuclidPoint next =
            EuclidPoint{1.0, -0.5} + (v + dv) * geometry::unit(d + dth);
        if (!placement_inside(zone, disc, next)) ++escapes;
    }
    EXPECT_EQ(escapes, 0);
}

TEST(BuildSafeZone, ZoneMonotoneInConfidence) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ua(0.0, kTwoPi);
    std::uniform_real_distribution<double> uv(0.2, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto fp =
            Footprint::from_vertices(oracles::random_convex_polygon(rng, 6, 10, 0.8));
        const auto s = make_state({0, 0}, ua(rng), uv(rng), 0.08, 0.07, false);
        const auto z1 = build_safe_zone(s, fp, 1.0);
        const auto z2 = build_safe_zone(s, fp, 2.5);
        EXPECT_TRUE(oracles::raster_subset(z1.region, z2.region, {-4, -4}, {4, 4}, 250));
    }
}

TEST(BuildSafeZone, ConvergesToDeterministicSweptAsSigmaVanishes) {
    const auto disc = Footprint::circle(1.0, 96);
    const auto det = build_safe_zone(make_state({0, 0}, 0.4, 1.2, 0, 0, true), disc, 2.0);
    const auto tiny =
        build_safe_zone(make_state({0, 0}, 0.4, 1.2, 1e-4, 1e-4, false), disc, 2.0);
    const double sym_diff =
        geometry::region_area(geometry::region_difference(det.region, tiny.region)) +
        geometry::region_area(geometry::region_difference(tiny.region, det.region));
    EXPECT_LT(sym_diff, 0.02 * geometry::region_area(det.region));
}

TEST(BuildSafeZone, RestCaseCoversAllDirections) {
    const auto disc = Footprint::circle(0.5, 64);
    ObjectState s;
    s.pose = geometry::euclid_to_polar({2.0, 2.0});
    s.expected_speed = 0.0;
    s.expected_direction = 0.0;
    s.deterministic = false;
    s.speed_model = {0.0, 0.2};
    s.direction_model = {0.0, 0.5, false}; // at rest: uniform direction
    const auto z = build_safe_zone(s, disc, 2.0);
    // footprint inflated by the speed bound in every direction
    for (int k = 0; k < 16; ++k) {
        const EuclidPoint p = EuclidPoint{2.0, 2.0} + 0.85 * geometry::unit(kTwoPi * k / 16);
        EXPECT_TRUE(z.contains(p)) << "direction " << k;
    }
}

TEST(BuildSafeZone, SweepIntegralsExposed) {
    const auto disc = Footprint::circle(1.0, 96);
    const auto z = build_safe_zone(make_state({0, 0}, 0.0, 1.0, 0.1, 0.1, false), disc, 2.0);
    // the forward band (current back boundary to displaced front envelope)
    // dominates the backward one for forward motion
    EXPECT_GT(z.sweep_integral_forward, 0.0);
    EXPECT_GE(z.sweep_integral_forward, z.sweep_integral_backward);
}

TEST(UnionSafeZones, SingleAndDisjoint) {
    const auto disc = Footprint::circle(1.0, 64);
    const auto za = build_safe_zone(make_state({0, 0}, 0, 0, 0, 0, true), disc, 2.0);
    const auto zb = build_safe_zone(make_state({5, 0}, 0, 0, 0, 0, true), disc, 2.0);
    const auto single = union_safe_zones({za});
    EXPECT_NEAR(geometry::region_area(single), geometry::region_area(za.region), 1e-9);
    const auto both = union_safe_zones({za, zb});
    const double sum = geometry::region_area(za.region) + geometry::region_area(zb.region);
    EXPECT_NEAR(geometry::region_area(both), sum, 1e-3 * sum);
    EXPECT_TRUE(union_safe_zones({}).empty());
}

TEST(UnionSafeZones, CoveringEnvironmentLeavesNoFreeSpace) {
    const auto big = Footprint::circle(10.0, 64);
    const auto z = build_safe_zone(make_state({0, 0}, 0, 0, 0, 0, true), big, 2.0);
    const auto env = geometry::Region::rectangle({-5, -5}, {5, 5});
    const auto free_space = geometry::region_difference(env, union_safe_zones({z}));
    EXPECT_LT(geometry::region_area(free_space), 1e-9);
}

TEST(SkipZone, HalfPlaneLeavesHalfDisc) {
    const ReachableDisc disc{{0, 0}, 1.0};
    SafeZone wall;
    {
        ObjectState s;
        s.pose = geometry::euclid_to_polar({50.0, 0.0});
        s.deterministic = true;
        s.direction_model.moving = false;
        wall = build_safe_zone(s, Footprint::rectangle(100.0, 100.0), 2.0);
    }
    const auto d = skip_zone(disc, {wall});
    EXPECT_NEAR(geometry::region_area(d), kPi / 2.0, 0.01 * kPi);
    const double raster = oracles::raster_area(d, {-1.2, -1.2}, {1.2, 1.2}, 400);
    EXPECT_NEAR(raster, kPi / 2.0, 0.02 * kPi);
}

TEST(SkipZone, CoveredAndDegenerate) {
    const ReachableDisc disc{{0, 0}, 1.0};
    SafeZone cover;
    {
        ObjectState s;
        s.pose = geometry::euclid_to_polar({0.0, 0.0});
        s.deterministic = true;
        s.direction_model.moving = false;
        cover = build_safe_zone(s, Footprint::circle(2.0, 64), 2.0);
    }
    EXPECT_LT(geometry::region_area(skip_zone(disc, {cover})), 1e-9);
    const auto full = skip_zone(disc, {});
    EXPECT_NEAR(geometry::region_area(full), kPi, 0.01 * kPi);
}

TEST(ThreatDensity, ModeAtExpectedNextCentroid) {
    const auto fp = Footprint::circle(0.5, 32);
    const auto s = make_state({-2.0, 0.0}, 0.0, 1.5, 0.3, 0.2, false);
    const std::vector<std::pair<ObjectState, Footprint>> threats{{s, fp}};
    const EuclidPoint mode{-0.5, 0.0}; // centroid + v * unit(d)
    const double at_mode = threat_density(mode, threats, 1.0);
    for (const EuclidPoint p : {EuclidPoint{-0.5, 0.4}, EuclidPoint{0.2, 0.0},
                                EuclidPoint{-1.2, 0.3}}) {
        EXPECT_LE(threat_density(p, threats, 1.0), at_mode + 1e-12);
    }
}

TEST(ThreatDensity, BehindThreatIsNegligible) {
    const auto fp = Footprint::circle(0.5, 32);
    const auto s = make_state({-2.0, 0.0}, 0.0, 1.0, 0.5, 0.1, false);
    const std::vector<std::pair<ObjectState, Footprint>> threats{{s, fp}};
    // angle offset pi from the heading: the direction term is deep in the tail
    const double dir_term = uncertainty::direction_error_pdf(s.direction_model, kPi - 1e-12);
    EXPECT_LT(dir_term, 1e-6);
    // at the same range as the expected displacement, only the speed term remains
    const EuclidPoint behind{-3.0, 0.0};
    const double total = threat_density(behind, threats, 1.0);
    const double speed_alone = uncertainty::speed_error_pdf(s.speed_model, 0.0);
    EXPECT_NEAR(total, speed_alone, 1e-6 + 1e-9 * speed_alone);
}

TEST(ThreatDensity, SymmetricThreatsGiveEqualTerms) {
    const auto fp = Footprint::circle(0.5, 32);
    const auto a = make_state({0.0, 2.0}, 3.0 * kPi / 2.0, 1.0, 0.2, 0.2, false);
    const auto b = make_state({0.0, -2.0}, kPi / 2.0, 1.0, 0.2, 0.2, false);
    for (double x : {-0.7, 0.0, 0.9}) {
        const double da = threat_density({x, 0.0}, {{a, fp}}, 1.0);
        const double db = threat_density({x, 0.0}, {{b, fp}}, 1.0);
        EXPECT_NEAR(da, db, 1e-12);
    }
}

TEST(ThreatDensity, CentroidCoincidenceUsesRestCase) {
    const auto fp = Footprint::circle(0.5, 32);
    const auto s = make_state({1.0, 1.0}, 0.0, 1.0, 0.3, 0.2, false);
    const double v = threat_density({1.0, 1.0}, {{s, fp}}, 1.0);
    const double expect = 1.0 / kTwoPi + uncertainty::speed_error_pdf(s.speed_model, -1.0);
    EXPECT_NEAR(v, expect, 1e-12);
}

TEST(ThreatDensity, ContinuousAwayFromCentroids) {
    const auto fp = Footprint::circle(0.5, 32);
    const auto s = make_state({-1.0, 0.3}, 0.2, 1.0, 0.4, 0.3, false);
    const std::vector<std::pair<ObjectState, Footprint>> threats{{s, fp}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const EuclidPoint p{u(rng), u(rng)};
        const double f0 = threat_density(p, threats, 1.0);
        const double fx = threat_density({p.x + 1e-6, p.y}, threats, 1.0);
        const double fy = threat_density({p.x, p.y + 1e-6}, threats, 1.0);
        EXPECT_LT(std::abs(fx - f0), 1e-4 + 1e-2 * f0);
        EXPECT_LT(std::abs(fy - f0), 1e-4 + 1e-2 * f0);
    }
}

TEST(SafeZoneQueries, PointQueriesAgreeWithRegion) {
    const auto disc = Footprint::circle(1.0, 64);
    const auto z = build_safe_zone(make_state({0.5, -1.0}, 0.7, 1.0, 0.1, 0.1, false), disc, 2.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    int agreements = 0;
    for (int i = 0; i < 2000; ++i) {
        const EuclidPoint p{u(rng), u(rng)};
        if (z.contains(p) == geometry::point_in(z.region, p)) ++agreements;
    }
    // disagreement is possible only within boundary tolerance
    EXPECT_GT(agreements, 1990);
}

TEST(SafeZoneQueries, SegmentIntersection) {
    const auto disc = Footprint::circle(1.0, 64);
    const auto z = build_safe_zone(make_state({0, 0}, 0.0, 1.0, 0.1, 0.1, false), disc, 2.0);
    // straight through the middle
    EXPECT_TRUE(z.segment_intersects({-3, 0}, {4, 0}));
    // far above
    EXPECT_FALSE(z.segment_intersects({-3, 3}, {4, 3}));
    // one endpoint deep inside
    EXPECT_TRUE(z.segment_intersects({0, 0}, {5, 5}));
    // both endpoints outside on the same side
    EXPECT_FALSE(z.segment_intersects({-3, -3}, {-2.5, 3}));
}
