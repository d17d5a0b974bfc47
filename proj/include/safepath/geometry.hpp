#pragma once
/**
 * @file  geometry.hpp
 * @brief Polar/Euclidean primitives, polygonal footprints, support-point
 *        extraction, boundary curves and their radial envelopes, and the
 *        predicted-motion curve transform.
 *
 * Conventions:
 * - Angles are radians, normalized to [0, 2pi) unless stated otherwise.
 * - Footprints are simple CCW polygons in centroid-local coordinates
 *   (the vertex centroid sits at the local origin).
 * - Boundary curves are sampled as (deg, dist) pairs about the footprint
 *   centroid with deg monotonically increasing (unwrapped, so values may
 *   exceed 2pi across the seam).
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace safepath::geometry {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle to [0, 2pi).
inline double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod can round back up to the period itself
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wrap an angle to [-pi, pi).
inline double wrap_signed(double a) {
    double r = std::remainder(a, kTwoPi); // (-pi, pi]
    if (r == kPi) r = -kPi;
    return r;
}

struct EuclidPoint {
    double x = 0.0;
    double y = 0.0;

    friend EuclidPoint operator+(EuclidPoint a, EuclidPoint b) { return {a.x + b.x, a.y + b.y}; }
    friend EuclidPoint operator-(EuclidPoint a, EuclidPoint b) { return {a.x - b.x, a.y - b.y}; }
    friend EuclidPoint operator*(double s, EuclidPoint p) { return {s * p.x, s * p.y}; }
    friend bool operator==(EuclidPoint a, EuclidPoint b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(EuclidPoint a, EuclidPoint b) { return a.x * b.x + a.y * b.y; }
inline double cross(EuclidPoint a, EuclidPoint b) { return a.x * b.y - a.y * b.x; }
inline double norm(EuclidPoint p) { return std::hypot(p.x, p.y); }
inline double distance(EuclidPoint a, EuclidPoint b) { return norm(b - a); }

/// Unit vector at the given angle.
inline EuclidPoint unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Angle of the vector a -> b, in [0, 2pi).
inline double bearing(EuclidPoint a, EuclidPoint b) {
    return normalize_angle(std::atan2(b.y - a.y, b.x - a.x));
}

/// Pose or displacement in polar form; angle in [0, 2pi), radius >= 0.
struct PolarPoint {
    double angle = 0.0;
    double radius = 0.0;
};

inline EuclidPoint polar_to_euclid(const PolarPoint& p) {
    return {p.radius * std::cos(p.angle), p.radius * std::sin(p.angle)};
}

/// Quadrant-correct inverse of polar_to_euclid. The origin maps to
/// (angle 0, radius 0) by convention.
inline PolarPoint euclid_to_polar(const EuclidPoint& e) {
    const double r = std::hypot(e.x, e.y);
    if (r == 0.0) return {0.0, 0.0};
    return {normalize_angle(std::atan2(e.y, e.x)), r};
}

/// One sample of a boundary curve: angle and distance to the centroid.
struct CurveSample {
    double deg = 0.0;  ///< unwrapped angle about the centroid
    double dist = 0.0; ///< distance to the centroid, >= 0
};

/// A contiguous piece of a footprint boundary between two support points,
/// sampled monotonically in deg.
struct BoundaryCurve {
    std::vector<CurveSample> samples;
    EuclidPoint begin_point; ///< first endpoint (centroid-local)
    EuclidPoint end_point;   ///< second endpoint (centroid-local)

    bool empty() const { return samples.empty(); }
    double deg_front() const { return samples.front().deg; }
    double deg_back() const { return samples.back().deg; }
};

/**
 * @brief Closed polygonal boundary of an object or robot in centroid-local
 *        coordinates (CCW, vertex centroid at the origin).
 */
class Footprint {
  public:
    /// Regular polygon approximation of a disc.
    static Footprint circle(double radius, int segments = 360) {
        if (radius <= 0.0) throw std::invalid_argument("footprint circle: radius must be > 0");
        if (segments < 3) throw std::invalid_argument("footprint circle: need >= 3 segments");
        std::vector<EuclidPoint> v;
        v.reserve(static_cast<std::size_t>(segments));
        for (int i = 0; i < segments; ++i) {
            const double a = kTwoPi * static_cast<double>(i) / static_cast<double>(segments);
            v.push_back({radius * std::cos(a), radius * std::sin(a)});
        }
        return Footprint(std::move(v));
    }

    /// Axis-aligned rectangle centered at the origin.
    static Footprint rectangle(double width, double height) {
        if (width <= 0.0 || height <= 0.0)
            throw std::invalid_argument("footprint rectangle: sides must be > 0");
        const double hw = 0.5 * width, hh = 0.5 * height;
        return Footprint({{hw, -hh}, {hw, hh}, {-hw, hh}, {-hw, -hh}});
    }

    /// Build from explicit vertices; validates the footprint invariants.
    static Footprint from_vertices(std::vector<EuclidPoint> v) { return Footprint(std::move(v)); }

    const std::vector<EuclidPoint>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    /// Signed (positive for CCW) polygon area by the shoelace formula.
    double area() const {
        double s = 0.0;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const auto& p = verts_[i];
            const auto& q = verts_[(i + 1) % verts_.size()];
            s += cross(p, q);
        }
        return 0.5 * s;
    }

    /// True when every boundary point is visible from the centroid, i.e. the
    /// radial distance is single-valued per angle. Safe-zone construction
    /// requires this.
    bool is_star_shaped() const {
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const auto& p = verts_[i];
            const auto& q = verts_[(i + 1) % verts_.size()];
            if (cross(p, q) <= 0.0) return false;
        }
        return true;
    }

    double max_radius() const {
        double r = 0.0;
        for (const auto& v : verts_) r = std::max(r, norm(v));
        return r;
    }

    /// Vertices translated to a world position.
    std::vector<EuclidPoint> placed_at(EuclidPoint center) const {
        std::vector<EuclidPoint> out;
        out.reserve(verts_.size());
        for (const auto& v : verts_) out.push_back(v + center);
        return out;
    }

  private:
    explicit Footprint(std::vector<EuclidPoint> v) : verts_(std::move(v)) { validate(); }

    void validate() const {
        if (verts_.size() < 3) throw std::invalid_argument("footprint: need >= 3 vertices");
        double scale = 0.0;
        EuclidPoint mean{0.0, 0.0};
        for (const auto& p : verts_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("footprint: non-finite vertex");
            mean = mean + p;
            scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
        }
        mean = (1.0 / static_cast<double>(verts_.size())) * mean;
        if (norm(mean) > 1e-9)
            throw std::invalid_argument("footprint: vertex centroid must be the local origin");
        if (std::abs(area()) < 1e-12 * std::max(scale * scale, 1.0))
            throw std::invalid_argument("footprint: degenerate (zero area)");
        if (area() < 0.0) throw std::invalid_argument("footprint: vertices must be CCW");
        if (!simple()) throw std::invalid_argument("footprint: polygon self-intersects");
    }

    static bool segments_cross(EuclidPoint a, EuclidPoint b, EuclidPoint c, EuclidPoint d) {
        const double d1 = cross(b - a, c - a);
        const double d2 = cross(b - a, d - a);
        const double d3 = cross(d - c, a - c);
        const double d4 = cross(d - c, b - c);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
    }

    bool simple() const {
        // Star-shaped polygons are simple by construction; only the general
        // case needs the quadratic scan.
        if (is_star_shaped()) return true;
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_cross(verts_[i], verts_[(i + 1) % n], verts_[j], verts_[(j + 1) % n]))
                    return false;
            }
        }
        return true;
    }

    std::vector<EuclidPoint> verts_;
};

/// Tangency sets produced by the parallel-line sweeps. Each set holds the
/// extremal boundary vertices: one vertex normally, two or more when an
/// edge is parallel to the sweep direction.
struct SupportPoints {
    std::vector<EuclidPoint> a; ///< last touching set for the high sweep direction
    std::vector<EuclidPoint> b; ///< last touching set for the low sweep direction
};

/**
 * @brief Locate the support points A and B of a footprint.
 *
 * A is the tangency set under lines parallel to dir_hi swept toward the
 * +normal side; B the tangency set under lines parallel to dir_lo swept
 * toward the -normal side. Points are centroid-local (the sweep is
 * translation invariant, so a world placement does not change them).
 */
inline SupportPoints support_points(const Footprint& fp, double dir_hi, double dir_lo) {
    const auto& v = fp.vertices();
    const double scale = std::max(fp.max_radius(), 1e-12);
    const double tol = 1e-9 * scale;

    const EuclidPoint n_hi{-std::sin(dir_hi), std::cos(dir_hi)};
    const EuclidPoint n_lo{-std::sin(dir_lo), std::cos(dir_lo)};

    double best_hi = -std::numeric_limits<double>::infinity();
    double best_lo = std::numeric_limits<double>::infinity();
    for (const auto& p : v) {
        best_hi = std::max(best_hi, dot(n_hi, p));
        best_lo = std::min(best_lo, dot(n_lo, p));
    }

    SupportPoints out;
    for (const auto& p : v) {
        if (dot(n_hi, p) >= best_hi - tol) out.a.push_back(p);
        if (dot(n_lo, p) <= best_lo + tol) out.b.push_back(p);
    }
    return out;
}

/// Deterministic cut rule for tangency tie sets: the element with the
/// smallest projection onto the sweep direction.
inline EuclidPoint support_cut_point(const std::vector<EuclidPoint>& set, double sweep_dir) {
    if (set.empty()) throw std::invalid_argument("support_cut_point: empty tangency set");
    const EuclidPoint u = unit(sweep_dir);
    return *std::min_element(set.begin(), set.end(), [&](EuclidPoint p, EuclidPoint q) {
        const double dp = dot(u, p), dq = dot(u, q);
        if (dp != dq) return dp < dq;
        return p.x != q.x ? p.x < q.x : p.y < q.y;
    });
}

namespace detail {

/// Position of a point on a polygon boundary: index of the edge it lies on
/// and the parameter along that edge.
struct BoundaryPos {
    std::size_t edge = 0;
    double t = 0.0;
};

inline BoundaryPos locate_on_boundary(const Footprint& fp, EuclidPoint p) {
    const auto& v = fp.vertices();
    const std::size_t n = v.size();
    BoundaryPos best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const EuclidPoint a = v[i];
        const EuclidPoint b = v[(i + 1) % n];
        const EuclidPoint ab = b - a;
        const double len2 = dot(ab, ab);
        double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        const EuclidPoint proj = a + t * ab;
        const double d = distance(p, proj);
        if (d < best_d) {
            best_d = d;
            best = {i, t};
        }
    }
    const double tol = 1e-7 * std::max(fp.max_radius(), 1e-12);
    if (best_d > tol) throw std::invalid_argument("split_boundary: point is not on the boundary");
    return best;
}

/// Walk the boundary CCW from `from` to `to`, inclusive of both endpoints.
inline std::vector<EuclidPoint> walk_ccw(const Footprint& fp, EuclidPoint from, EuclidPoint to) {
    const auto& v = fp.vertices();
    const std::size_t n = v.size();
    const BoundaryPos pa = locate_on_boundary(fp, from);
    const BoundaryPos pb = locate_on_boundary(fp, to);
    const double eps = 1e-12 * std::max(fp.max_radius(), 1.0);

    std::vector<EuclidPoint> chain;
    chain.push_back(from);
    if (!(pa.edge == pb.edge && pb.t >= pa.t)) {
        std::size_t edge = pa.edge;
        do {
            const EuclidPoint next = v[(edge + 1) % n];
            if (distance(chain.back(), next) > eps) chain.push_back(next);
            edge = (edge + 1) % n;
        } while (edge != pb.edge);
    }
    if (distance(chain.back(), to) > eps) chain.push_back(to);
    return chain;
}

inline BoundaryCurve curve_from_chain(const std::vector<EuclidPoint>& chain) {
    BoundaryCurve c;
    c.begin_point = chain.front();
    c.end_point = chain.back();
    c.samples.reserve(chain.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const PolarPoint p = euclid_to_polar(chain[i]);
        double deg = p.angle;
        if (i == 0) {
            prev = deg;
        } else {
            // CCW walk about the centroid strictly increases the angle;
            // unwrap across the 2pi seam.
            double delta = deg - prev;
            while (delta <= 0.0) delta += kTwoPi;
            while (delta > kTwoPi) delta -= kTwoPi;
            deg = prev + delta;
            prev = deg;
        }
        c.samples.push_back({deg, p.radius});
    }
    return c;
}

} // namespace detail

/**
 * @brief Split a footprint boundary at two support points.
 *
 * Returns {f, g} where f runs CCW from a to b (the side left of the sweep
 * line) and g runs CCW from b back to a (the side right of it).
 * Throws when a and b coincide; the caller handles the collapsed
 * deterministic case separately.
 */
inline std::pair<BoundaryCurve, BoundaryCurve> split_boundary(const Footprint& fp, EuclidPoint a,
                                                              EuclidPoint b) {
    if (!fp.is_star_shaped())
        throw std::invalid_argument("split_boundary: footprint must be star-shaped");
    if (distance(a, b) <= 1e-12 * std::max(fp.max_radius(), 1.0))
        throw std::invalid_argument("split_boundary: support points coincide");
    BoundaryCurve f = detail::curve_from_chain(detail::walk_ccw(fp, a, b));
    BoundaryCurve g = detail::curve_from_chain(detail::walk_ccw(fp, b, a));
    return {std::move(f), std::move(g)};
}

enum class EnvelopeMode { Max, Min };

/**
 * @brief Radial envelope of a boundary curve.
 *
 * Mode Max replaces dist over the window spanned by the first and last
 * strict interior local maxima with the window maximum; mode Min does the
 * dual with local minima. Curves without two interior extrema (monotone,
 * single peak or dip) pass through unchanged. Plateaus count as neither
 * increasing nor decreasing, so they never anchor a window; neither do the
 * curve endpoints, which keeps envelopes nested as the support span of a
 * safe zone widens.
 */
inline BoundaryCurve radial_envelope(const BoundaryCurve& curve, EnvelopeMode mode) {
    if (curve.empty()) throw std::invalid_argument("radial_envelope: empty curve");
    BoundaryCurve out = curve;
    auto& s = out.samples;
    const std::size_t m = s.size();
    if (m < 3) return out;

    const bool want_max = (mode == EnvelopeMode::Max);
    auto is_anchor = [&](std::size_t i) {
        if (want_max) return s[i].dist > s[i - 1].dist && s[i].dist > s[i + 1].dist;
        return s[i].dist < s[i - 1].dist && s[i].dist < s[i + 1].dist;
    };

    std::size_t first = m, last = 0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (!is_anchor(i)) continue;
        first = std::min(first, i);
        last = std::max(last, i);
    }
    if (first < last) {
        double ext = s[first].dist;
        for (std::size_t i = first; i <= last; ++i)
            ext = want_max ? std::max(ext, s[i].dist) : std::min(ext, s[i].dist);
        for (std::size_t i = first; i <= last; ++i) s[i].dist = ext;
    }
    return out;
}

/**
 * @brief Rigidly translate a curve by the predicted centroid displacement
 *        and express it in global polar coordinates.
 *
 * Each sample point (a centroid-local position) is moved to
 * centroid + sample + displacement; no rotation is applied. Angles are
 * unwrapped starting from the first sample.
 */
inline BoundaryCurve transform_curve(const BoundaryCurve& curve, const PolarPoint& centroid_pose,
                                     const PolarPoint& predicted_disp) {
    BoundaryCurve out;
    const EuclidPoint shift = polar_to_euclid(centroid_pose) + polar_to_euclid(predicted_disp);
    out.begin_point = curve.begin_point + shift;
    out.end_point = curve.end_point + shift;
    out.samples.reserve(curve.samples.size());
    double prev = 0.0;
    bool have_prev = false;
    for (const auto& smp : curve.samples) {
        const EuclidPoint local = smp.dist * unit(smp.deg);
        const PolarPoint p = euclid_to_polar(local + shift);
        double deg = p.angle;
        if (!have_prev) {
            have_prev = true;
        } else {
            deg = prev + wrap_signed(deg - prev);
        }
        prev = deg;
        out.samples.push_back({deg, p.radius});
    }
    return out;
}

/// Convex hull (Andrew monotone chain), CCW without repeated last point.
inline std::vector<EuclidPoint> convex_hull(std::vector<EuclidPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](EuclidPoint a, EuclidPoint b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<EuclidPoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace safepath::geometry
