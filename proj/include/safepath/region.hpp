#pragma once
/**
 * @file  region.hpp
 * @brief Closed planar regions with even-odd semantics: point and segment
 *        queries, boolean algebra, and area. Boolean operations are backed
 *        by Boost.Geometry behind this interface.
 */

#include "safepath/geometry.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/geometries.hpp>
#include <boost/geometry/geometries/point_xy.hpp>

#include <initializer_list>
#include <vector>

namespace safepath::geometry {

namespace detail {
namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;
using BgSegment = bg::model::segment<BgPoint>;
using BgLinestring = bg::model::linestring<BgPoint>;
using BgMultiLinestring = bg::model::multi_linestring<BgLinestring>;
using BgBox = bg::model::box<BgPoint>;
} // namespace detail

/// A closed planar region: zero or more outer rings (CCW) with holes (CW).
class Region {
  public:
    Region() = default;

    /// Region bounded by a single closed ring. Orientation is normalized.
    static Region from_ring(const std::vector<EuclidPoint>& ring) {
        Region r;
        if (ring.size() < 3) return r;
        detail::BgPolygon poly;
        for (const auto& p : ring) poly.outer().push_back({p.x, p.y});
        detail::bg::correct(poly);
        r.mp_.push_back(std::move(poly));
        return r;
    }

    static Region rectangle(EuclidPoint lo, EuclidPoint hi) {
        return from_ring({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
    }

    bool empty() const { return mp_.empty(); }

    /// All rings, outers first then holes, as plain point lists. Outer rings
    /// come out CCW and holes CW; rings are not closed (no repeated point).
    std::vector<std::vector<EuclidPoint>> rings() const {
        std::vector<std::vector<EuclidPoint>> out;
        auto push_ring = [&out](const auto& ring) {
            std::vector<EuclidPoint> r;
            r.reserve(ring.size());
            for (const auto& p : ring) r.push_back({p.x(), p.y()});
            if (r.size() > 1 && distance(r.front(), r.back()) == 0.0) r.pop_back();
            out.push_back(std::move(r));
        };
        for (const auto& poly : mp_) {
            push_ring(poly.outer());
            for (const auto& inner : poly.inners()) push_ring(inner);
        }
        return out;
    }

    const detail::BgMultiPolygon& multi_polygon() const { return mp_; }
    detail::BgMultiPolygon& multi_polygon() { return mp_; }

  private:
    detail::BgMultiPolygon mp_;
};

/// Even-odd point membership; boundary points count as inside.
inline bool point_in(const Region& r, EuclidPoint p) {
    if (r.empty()) return false;
    return detail::bg::covered_by(detail::BgPoint{p.x, p.y}, r.multi_polygon());
}

/// Strict interior membership (boundary excluded).
inline bool point_strictly_in(const Region& r, EuclidPoint p) {
    if (r.empty()) return false;
    return detail::bg::within(detail::BgPoint{p.x, p.y}, r.multi_polygon());
}

/**
 * @brief True iff the open segment a-b does not cross the region interior.
 *
 * Sliding along a boundary edge or touching a vertex is still clear; only
 * pieces that run through the interior count.
 */
inline bool segment_clear(const Region& r, EuclidPoint a, EuclidPoint b) {
    if (r.empty()) return true;
    namespace bg = detail::bg;
    detail::BgLinestring seg{{a.x, a.y}, {b.x, b.y}};

    detail::BgBox seg_box;
    bg::envelope(seg, seg_box);
    detail::BgBox reg_box;
    bg::envelope(r.multi_polygon(), reg_box);
    if (bg::disjoint(seg_box, reg_box)) return true;

    detail::BgMultiLinestring pieces;
    bg::intersection(seg, r.multi_polygon(), pieces);
    const double tol = 1e-9 * std::max(1.0, distance(a, b));
    for (const auto& piece : pieces) {
        if (bg::length(piece) <= tol) continue;
        for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
            const EuclidPoint mid{0.5 * (piece[i].x() + piece[i + 1].x()),
                                  0.5 * (piece[i].y() + piece[i + 1].y())};
            if (point_strictly_in(r, mid)) return false;
        }
    }
    return true;
}

/// Union of any number of regions. An empty list yields the empty region.
inline Region region_union(const std::vector<Region>& rs) {
    Region acc;
    for (const auto& r : rs) {
        if (r.empty()) continue;
        if (acc.empty()) {
            acc = r;
            continue;
        }
        detail::BgMultiPolygon merged;
        detail::bg::union_(acc.multi_polygon(), r.multi_polygon(), merged);
        acc.multi_polygon() = std::move(merged);
    }
    return acc;
}

inline Region region_union(const Region& a, const Region& b) { return region_union({a, b}); }

inline Region region_intersect(const Region& a, const Region& b) {
    Region out;
    if (a.empty() || b.empty()) return out;
    detail::bg::intersection(a.multi_polygon(), b.multi_polygon(), out.multi_polygon());
    return out;
}

inline Region region_difference(const Region& a, const Region& b) {
    if (a.empty()) return {};
    if (b.empty()) return a;
    Region out;
    detail::bg::difference(a.multi_polygon(), b.multi_polygon(), out.multi_polygon());
    return out;
}

inline double region_area(const Region& r) {
    return r.empty() ? 0.0 : detail::bg::area(r.multi_polygon());
}

/// True when the two regions share interior of nonzero area (zero-area
/// boundary contact does not count).
inline bool regions_overlap(const Region& a, const Region& b, double area_eps = 1e-9) {
    if (a.empty() || b.empty()) return false;
    detail::BgBox ba, bb;
    detail::bg::envelope(a.multi_polygon(), ba);
    detail::bg::envelope(b.multi_polygon(), bb);
    if (detail::bg::disjoint(ba, bb)) return false;
    return region_area(region_intersect(a, b)) > area_eps;
}

} // namespace safepath::geometry
