#pragma once
/**
 * @file  safezone.hpp
 * @brief Per-object safe zones built from states and error bounds, zone
 *        unions, skip zones and threat densities for high-risk handling.
 *
 * A safe zone is the region an object may occupy at the next step. Two
 * constructions exist:
 *  - deterministic-swept: the convex hull of the current footprint and the
 *    footprint translated by the known displacement (exact, no margin);
 *  - probabilistic-envelope: support points split the boundary into front
 *    and back curves, the front curve is radially enveloped, and the zone
 *    is the convex hull of the enveloped boundary Minkowski-summed with the
 *    fan of displacements [d - dtheta, d + dtheta] at speed v + dv. The sum
 *    contains the current footprint, the displaced enveloped boundary at
 *    every direction in the fan, and every placement whose errors respect
 *    the bounds; it nests exactly across confidence levels.
 *
 * Both constructions are star-shaped about the current centroid, which the
 * fast point/segment queries exploit.
 */

#include "safepath/geometry.hpp"
#include "safepath/prediction.hpp"
#include "safepath/region.hpp"
#include "safepath/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace safepath::safezone {

using geometry::EuclidPoint;
using geometry::Footprint;
using geometry::PolarPoint;

enum class ZoneConstruction { DeterministicSwept, ProbabilisticEnvelope };

struct ZoneParams {
    int angular_resolution = 360; ///< uniform boundary samples per full turn
    int max_fan_steps = 36;       ///< cap on displacement fan segments
};

/// All points the robot can reach in one step.
struct ReachableDisc {
    EuclidPoint center;
    double radius = 0.0;

    geometry::Region to_region(int segments = 96) const {
        std::vector<EuclidPoint> ring;
        ring.reserve(static_cast<std::size_t>(segments));
        for (int i = 0; i < segments; ++i) {
            const double a = geometry::kTwoPi * i / segments;
            ring.push_back(center + radius * geometry::unit(a));
        }
        return geometry::Region::from_ring(ring);
    }
};

/**
 * @brief A closed region an object may occupy next step; robot-forbidden.
 *
 * Star-shaped about `center`: the boundary is stored as sorted angles with
 * matching radii, and `region` is the same polygon as a Region value.
 */
class SafeZone {
  public:
    std::string object_id;
    long valid_for_step = 0;
    ZoneConstruction construction = ZoneConstruction::DeterministicSwept;
    geometry::Region region;

    /// Paper-style band areas, exposed for diagnostics: the forward band
    /// (displaced front envelope vs current back curve) and the backward one.
    double sweep_integral_forward = 0.0;
    double sweep_integral_backward = 0.0;

    EuclidPoint center() const { return center_; }
    double max_extent() const { return max_radius_; }

    /// Point membership (boundary counts as inside).
    bool contains(EuclidPoint p) const {
        const EuclidPoint d = p - center_;
        const double r = geometry::norm(d);
        if (r <= min_radius_ + kEps) return true;
        if (r > max_radius_ + kEps) return false;
        return r <= boundary_radius(std::atan2(d.y, d.x)) + kEps;
    }

    /// True when the open segment a-b runs through the zone interior.
    bool segment_intersects(EuclidPoint a, EuclidPoint b) const {
        if (std::min(a.x, b.x) > bbox_hi_.x || std::max(a.x, b.x) < bbox_lo_.x ||
            std::min(a.y, b.y) > bbox_hi_.y || std::max(a.y, b.y) < bbox_lo_.y)
            return false;
        if (strictly_contains(a) || strictly_contains(b)) return true;
        if (strictly_contains(EuclidPoint{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)})) return true;
        if (point_segment_distance(center_, a, b) <= min_radius_) return true;
        // Only edges whose angular span overlaps the segment's subtended
        // interval can cross it; walk them in order.
        const EuclidPoint da = a - center_;
        const EuclidPoint db = b - center_;
        const double t1 = std::atan2(da.y, da.x);
        const double t2 = std::atan2(db.y, db.x);
        const double delta = geometry::wrap_signed(t2 - t1);
        const double start = unwrap(delta >= 0.0 ? t1 : t2);
        const double end = start + std::abs(delta);
        const std::size_t n = angles_.size();
        std::size_t idx = index_before(start);
        double edge_start = angles_[idx];
        for (std::size_t k = 0; k < n; ++k) {
            if (proper_cross(a, b, vertex(idx), vertex((idx + 1) % n))) return true;
            const std::size_t nxt = (idx + 1) % n;
            double next_start = angles_[nxt];
            while (next_start < edge_start + 1e-300) next_start += geometry::kTwoPi;
            if (next_start > end) break;
            edge_start = next_start;
            idx = nxt;
        }
        return false;
    }

    /// Assemble from a star boundary description (angles sorted ascending
    /// within one turn, radii matching).
    static SafeZone from_star(EuclidPoint center, std::vector<double> angles,
                              std::vector<double> radii) {
        SafeZone z;
        z.center_ = center;
        z.angles_ = std::move(angles);
        z.radii_ = std::move(radii);
        z.finalize();
        return z;
    }

  private:
    static constexpr double kEps = 1e-9;

    EuclidPoint vertex(std::size_t i) const {
        return center_ + radii_[i] * geometry::unit(angles_[i]);
    }

    bool strictly_contains(EuclidPoint p) const {
        const EuclidPoint d = p - center_;
        const double r = geometry::norm(d);
        if (r < min_radius_ - kEps) return true;
        if (r >= max_radius_) return false;
        return r < boundary_radius(std::atan2(d.y, d.x)) - kEps;
    }

    double unwrap(double a) const {
        double x = a;
        while (x < angles_.front()) x += geometry::kTwoPi;
        while (x >= angles_.front() + geometry::kTwoPi) x -= geometry::kTwoPi;
        return x;
    }

    std::size_t index_before(double unwrapped) const {
        const auto it = std::upper_bound(angles_.begin(), angles_.end(), unwrapped);
        if (it == angles_.begin()) return angles_.size() - 1;
        return static_cast<std::size_t>(it - angles_.begin()) - 1;
    }

    /// Radial distance of the zone boundary at a query angle.
    double boundary_radius(double angle) const {
        const double a = unwrap(angle);
        const std::size_t i = index_before(a);
        const std::size_t j = (i + 1) % angles_.size();
        const EuclidPoint p = radii_[i] * geometry::unit(angles_[i]);
        const EuclidPoint q = radii_[j] * geometry::unit(angles_[j]);
        // ray-segment intersection about the center
        const EuclidPoint u = geometry::unit(a);
        const double denom = geometry::cross(q - p, u);
        if (std::abs(denom) < 1e-300) return std::max(radii_[i], radii_[j]);
        const double s = -geometry::cross(p, u) / denom;
        const EuclidPoint hit = p + s * (q - p);
        return geometry::dot(hit, u);
    }

    static bool proper_cross(EuclidPoint a, EuclidPoint b, EuclidPoint c, EuclidPoint d) {
        const double d1 = geometry::cross(b - a, c - a);
        const double d2 = geometry::cross(b - a, d - a);
        const double d3 = geometry::cross(d - c, a - c);
        const double d4 = geometry::cross(d - c, b - c);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
    }

    static double point_segment_distance(EuclidPoint p, EuclidPoint a, EuclidPoint b) {
        const EuclidPoint ab = b - a;
        const double len2 = geometry::dot(ab, ab);
        const double t = len2 > 0.0 ? std::clamp(geometry::dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        return geometry::distance(p, a + t * ab);
    }

    void finalize() {
        min_radius_ = std::numeric_limits<double>::infinity();
        max_radius_ = 0.0;
        for (double r : radii_) {
            min_radius_ = std::min(min_radius_, r);
            max_radius_ = std::max(max_radius_, r);
        }
        bbox_lo_ = {center_.x - max_radius_, center_.y - max_radius_};
        bbox_hi_ = {center_.x + max_radius_, center_.y + max_radius_};
        std::vector<EuclidPoint> ring;
        ring.reserve(angles_.size());
        for (std::size_t i = 0; i < angles_.size(); ++i) ring.push_back(vertex(i));
        region = geometry::Region::from_ring(ring);
    }

    EuclidPoint center_;
    std::vector<double> angles_; ///< ascending, spanning one turn
    std::vector<double> radii_;
    double min_radius_ = 0.0;
    double max_radius_ = 0.0;
    EuclidPoint bbox_lo_, bbox_hi_;
};

namespace detail {

/// Minkowski sum of two convex vertex sets, as a convex hull of pairwise sums.
inline std::vector<EuclidPoint> minkowski_hull(const std::vector<EuclidPoint>& a,
                                               const std::vector<EuclidPoint>& b) {
    std::vector<EuclidPoint> sums;
    sums.reserve(a.size() * b.size());
    for (const auto& p : a)
        for (const auto& q : b) sums.push_back(p + q);
    return geometry::convex_hull(std::move(sums));
}

/// Piecewise-linear interpolation of a boundary curve's dist over deg,
/// clamped to the nearer endpoint outside the curve's angular domain.
inline double curve_dist_at(const geometry::BoundaryCurve& c, double angle) {
    const auto& s = c.samples;
    const double d0 = s.front().deg;
    const double d1 = s.back().deg;
    double a = angle;
    while (a < d0 - geometry::kPi) a += geometry::kTwoPi;
    while (a > d1 + geometry::kPi) a -= geometry::kTwoPi;
    if (a <= d0) return s.front().dist;
    if (a >= d1) return s.back().dist;
    auto it = std::lower_bound(s.begin(), s.end(), a, [](const geometry::CurveSample& cs,
                                                         double v) { return cs.deg < v; });
    if (it == s.begin()) return it->dist;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double span = hi.deg - lo.deg;
    if (span <= 0.0) return std::max(lo.dist, hi.dist);
    const double t = (a - lo.deg) / span;
    return lo.dist + t * (hi.dist - lo.dist);
}

} // namespace detail

/**
 * @brief Build the safe zone of one object for the next step.
 *
 * Deterministic objects get the exact swept construction; non-deterministic
 * ones the probabilistic envelope at the given confidence multiple.
 * Requires a star-shaped footprint.
 */
inline SafeZone build_safe_zone(const prediction::ObjectState& s, const Footprint& fp,
                                double confidence_z, const ZoneParams& params = {},
                                std::string object_id = {}, long valid_for_step = 0) {
    if (!fp.is_star_shaped())
        throw std::invalid_argument("build_safe_zone: footprint must be star-shaped");

    const auto bounds = s.deterministic
                            ? uncertainty::ErrorBounds{}
                            : uncertainty::error_bounds(s.speed_model, s.direction_model,
                                                        confidence_z);
    const EuclidPoint center = geometry::polar_to_euclid(s.pose);
    const double d = s.expected_direction;
    const double v = s.expected_speed;

    SafeZone zone;
    if (bounds.delta_v == 0.0 && bounds.delta_theta == 0.0) {
        // Deterministic: footprint exactly when at rest, swept hull otherwise.
        std::vector<EuclidPoint> local = fp.vertices();
        if (v > 0.0) {
            const EuclidPoint disp = v * geometry::unit(d);
            std::vector<EuclidPoint> both = local;
            for (const auto& p : local) both.push_back(p + disp);
            local = geometry::convex_hull(std::move(both));
        }
        std::vector<double> angles;
        std::vector<double> radii;
        angles.reserve(local.size());
        std::size_t start = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < local.size(); ++i) {
            const double a = geometry::normalize_angle(std::atan2(local[i].y, local[i].x));
            if (a < best) {
                best = a;
                start = i;
            }
        }
        for (std::size_t k = 0; k < local.size(); ++k) {
            const EuclidPoint p = local[(start + k) % local.size()];
            angles.push_back(geometry::normalize_angle(std::atan2(p.y, p.x)));
            radii.push_back(geometry::norm(p));
        }
        zone = SafeZone::from_star(center, std::move(angles), std::move(radii));
        zone.construction = ZoneConstruction::DeterministicSwept;
    } else {
        const double dtheta = bounds.delta_theta;
        const double reach = v + bounds.delta_v;

        // Paper pipeline: support points, boundary split, radial envelopes.
        const auto sp = geometry::support_points(fp, d + dtheta, d - dtheta);
        const EuclidPoint cut_a = geometry::support_cut_point(sp.a, d + dtheta);
        const EuclidPoint cut_b = geometry::support_cut_point(sp.b, d - dtheta);
        const auto [curve_f, curve_g] = geometry::split_boundary(fp, cut_a, cut_b);
        const auto env_g = geometry::radial_envelope(curve_g, geometry::EnvelopeMode::Max);
        const auto env_f = geometry::radial_envelope(curve_f, geometry::EnvelopeMode::Min);

        // Envelope for the zone region: applied to the vertex-only interior
        // of the front curve so the window anchors are independent of where
        // the confidence-dependent cut points fall. Keeps zones nested in z.
        geometry::BoundaryCurve env_g_region = curve_g;
        if (curve_g.samples.size() >= 5) {
            geometry::BoundaryCurve inner = curve_g;
            inner.samples.erase(inner.samples.begin());
            inner.samples.pop_back();
            inner = geometry::radial_envelope(inner, geometry::EnvelopeMode::Max);
            for (std::size_t i = 0; i < inner.samples.size(); ++i)
                env_g_region.samples[i + 1] = inner.samples[i];
        }

        // Enveloped outer boundary: the front curve lifted to its envelope,
        // the back curve unchanged. Plateau arcs get intermediate samples so
        // the polygonization dominates the radial profile.
        std::vector<EuclidPoint> enveloped;
        const double grid_step = geometry::kTwoPi / params.angular_resolution;
        auto append_curve = [&](const geometry::BoundaryCurve& c, bool skip_first) {
            for (std::size_t i = skip_first ? 1 : 0; i < c.samples.size(); ++i) {
                const auto& smp = c.samples[i];
                if (i > 0) {
                    const auto& prev = c.samples[i - 1];
                    if (smp.dist == prev.dist && smp.deg - prev.deg > grid_step) {
                        const int extra = static_cast<int>((smp.deg - prev.deg) / grid_step);
                        for (int e = 1; e <= extra; ++e) {
                            const double a = prev.deg + e * grid_step;
                            if (a >= smp.deg) break;
                            const double lift = prev.dist / std::cos(0.5 * grid_step);
                            enveloped.push_back(lift * geometry::unit(a));
                        }
                    }
                }
                enveloped.push_back(smp.dist * geometry::unit(smp.deg));
            }
        };
        append_curve(env_g_region, false);
        append_curve(curve_f, true);
        if (geometry::distance(enveloped.front(), enveloped.back()) < 1e-12)
            enveloped.pop_back();

        // Displacement fan across [d - dtheta, d + dtheta], chords
        // circumscribed so the fan polygon covers the true displacement
        // wedge of radius v + dv.
        const bool full_turn = dtheta >= geometry::kPi - 1e-12;
        std::vector<EuclidPoint> fan_poly;
        if (reach > 0.0) {
            if (full_turn) {
                const int steps =
                    std::clamp(static_cast<int>(std::ceil(geometry::kTwoPi / grid_step)), 8,
                               4 * params.max_fan_steps);
                const double h = geometry::kTwoPi / steps;
                const double r = reach / std::cos(0.5 * h);
                for (int j = 0; j < steps; ++j)
                    fan_poly.push_back(r * geometry::unit(d - dtheta + j * h));
            } else if (dtheta > 0.0) {
                const int steps =
                    std::clamp(static_cast<int>(std::ceil(2.0 * dtheta / grid_step)), 2,
                               params.max_fan_steps);
                const double h = 2.0 * dtheta / steps;
                const double r = reach / std::cos(0.5 * h);
                for (int j = 0; j <= steps; ++j)
                    fan_poly.push_back(r * geometry::unit(d - dtheta + j * h));
                fan_poly.push_back({0.0, 0.0});
            } else {
                fan_poly = {{0.0, 0.0}, reach * geometry::unit(d)};
            }
        }

        // The zone: hull(enveloped boundary) (+) fan. This single convex
        // polygon contains the current footprint, every displaced copy of
        // the enveloped boundary across the fan, and every placement whose
        // errors respect the bounds; it nests exactly across confidence
        // levels because both factors do.
        std::vector<EuclidPoint> local =
            fan_poly.empty() ? geometry::convex_hull(enveloped)
                             : detail::minkowski_hull(geometry::convex_hull(enveloped), fan_poly);

        std::vector<double> angles, radii;
        angles.reserve(local.size());
        radii.reserve(local.size());
        std::size_t start = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < local.size(); ++i) {
            const double a = geometry::normalize_angle(std::atan2(local[i].y, local[i].x));
            if (a < best) {
                best = a;
                start = i;
            }
        }
        for (std::size_t k = 0; k < local.size(); ++k) {
            const EuclidPoint p = local[(start + k) % local.size()];
            angles.push_back(geometry::normalize_angle(std::atan2(p.y, p.x)));
            radii.push_back(geometry::norm(p));
        }
        zone = SafeZone::from_star(center, std::move(angles), std::move(radii));
        zone.construction = ZoneConstruction::ProbabilisticEnvelope;

        // Paper band integrals, for diagnostics only.
        const PolarPoint disp{geometry::normalize_angle(d), reach};
        const auto g_c = geometry::transform_curve(env_g, PolarPoint{0.0, 0.0}, disp);
        const auto f_c = geometry::transform_curve(env_f, PolarPoint{0.0, 0.0}, disp);
        const int quad_n = 256;
        double fwd = 0.0, bwd = 0.0;
        for (int i = 0; i < quad_n; ++i) {
            const double a = d - dtheta + (i + 0.5) * (2.0 * dtheta / quad_n);
            const double go = detail::curve_dist_at(g_c, a);
            const double fi = detail::curve_dist_at(curve_f, a);
            const double fo = detail::curve_dist_at(f_c, a);
            const double gi = detail::curve_dist_at(curve_g, a);
            fwd += go * go - fi * fi;
            bwd += fo * fo - gi * gi;
        }
        const double da = 2.0 * dtheta / quad_n;
        zone.sweep_integral_forward = 0.5 * fwd * da;
        zone.sweep_integral_backward = 0.5 * bwd * da;
    }

    zone.object_id = std::move(object_id);
    zone.valid_for_step = valid_for_step;
    return zone;
}

/// Union of safe-zone regions for one step.
inline geometry::Region union_safe_zones(const std::vector<SafeZone>& zones) {
    std::vector<geometry::Region> regions;
    regions.reserve(zones.size());
    for (const auto& z : zones) regions.push_back(z.region);
    return geometry::region_union(regions);
}

/// Skip zone: the part of the reachable disc not covered by the threatening
/// zones. May be empty.
inline geometry::Region skip_zone(const ReachableDisc& disc,
                                  const std::vector<SafeZone>& threatening) {
    geometry::Region out = disc.to_region();
    for (const auto& z : threatening) out = geometry::region_difference(out, z.region);
    return out;
}

/**
 * @brief Summed error-density score of a candidate point against the
 *        threatening objects; lower is safer.
 *
 * Each object contributes its direction density at the angular offset of
 * the point from the object's expected heading plus its speed density at
 * the radial speed that would carry it to the point in one step.
 */
inline double threat_density(EuclidPoint p,
                             const std::vector<std::pair<prediction::ObjectState, Footprint>>&
                                 threatening,
                             double dt = 1.0) {
    double total = 0.0;
    for (const auto& [state, fp] : threatening) {
        (void)fp;
        const EuclidPoint c = geometry::polar_to_euclid(state.pose);
        const EuclidPoint delta = p - c;
        const double r = geometry::norm(delta);
        double dir_term;
        if (r < 1e-12) {
            dir_term = 1.0 / geometry::kTwoPi; // rest-case uniform by convention
        } else if (!state.direction_model.moving) {
            dir_term = 1.0 / geometry::kTwoPi;
        } else {
            const double offset =
                geometry::wrap_signed(std::atan2(delta.y, delta.x) - state.expected_direction);
            dir_term = uncertainty::direction_error_pdf(state.direction_model, offset);
        }
        const double speed_term =
            uncertainty::speed_error_pdf(state.speed_model, r / dt - state.expected_speed);
        total += dir_term + speed_term;
    }
    return total;
}

} // namespace safepath::safezone
