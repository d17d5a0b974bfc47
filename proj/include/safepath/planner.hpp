#pragma once
/**
 * @file  planner.hpp
 * @brief Grid shortest paths, per-step target selection, velocity decision,
 *        high-risk run-away fallbacks, the swept-footprint move filter and
 *        the trajectory objective.
 *
 * Shortest paths run on an 8-connected occupancy grid over the environment
 * with Euclidean edge weights. Distances are derived from (straight, diagonal)
 * step counts so equal paths produce bit-identical lengths regardless of
 * relaxation order.
 */

#include "safepath/geometry.hpp"
#include "safepath/region.hpp"
#include "safepath/safezone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace safepath::planner {

using geometry::EuclidPoint;
using geometry::Footprint;
using geometry::PolarPoint;

/// Kinematic robot state plus its speed limit and footprint.
struct RobotState {
    PolarPoint pose;
    double decided_direction = 0.0;
    double decided_speed = 0.0;
    double v_max = 1.0;
    std::optional<Footprint> footprint; ///< empty for a point robot
};

/// Occupancy grid over the environment rectangle; 8-connected with
/// Euclidean edge weights.
class PlanGrid {
  public:
    PlanGrid(EuclidPoint lo, EuclidPoint hi, double cell)
        : lo_(lo), hi_(hi), cell_(cell) {
        if (cell <= 0.0 || hi.x <= lo.x || hi.y <= lo.y)
            throw std::invalid_argument("plan grid: bad bounds or cell size");
        nx_ = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / cell - 1e-9)));
        ny_ = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / cell - 1e-9)));
        blocked_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double cell() const { return cell_; }
    EuclidPoint lo() const { return lo_; }
    EuclidPoint hi() const { return hi_; }
    std::size_t size() const { return blocked_.size(); }

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * nx_ + ix;
    }
    EuclidPoint center_of(int ix, int iy) const {
        return {lo_.x + (ix + 0.5) * cell_, lo_.y + (iy + 0.5) * cell_};
    }
    EuclidPoint center_of(std::size_t idx) const {
        return center_of(static_cast<int>(idx % nx_), static_cast<int>(idx / nx_));
    }

    /// Cell containing a point, or nothing when outside the bounds.
    std::optional<std::pair<int, int>> cell_of(EuclidPoint p) const {
        if (p.x < lo_.x - 1e-9 || p.y < lo_.y - 1e-9 || p.x > hi_.x + 1e-9 || p.y > hi_.y + 1e-9)
            return std::nullopt;
        int ix = std::clamp(static_cast<int>((p.x - lo_.x) / cell_), 0, nx_ - 1);
        int iy = std::clamp(static_cast<int>((p.y - lo_.y) / cell_), 0, ny_ - 1);
        return std::make_pair(ix, iy);
    }

    bool blocked(int ix, int iy) const { return blocked_[index(ix, iy)] != 0; }
    bool blocked(std::size_t idx) const { return blocked_[idx] != 0; }
    void set_blocked(int ix, int iy, bool b = true) { blocked_[index(ix, iy)] = b ? 1 : 0; }

    /// Block every cell whose square intersects the polygon.
    void block_polygon(const std::vector<EuclidPoint>& poly) {
        double minx = poly[0].x, maxx = poly[0].x, miny = poly[0].y, maxy = poly[0].y;
        for (const auto& p : poly) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        const int ix0 = std::max(0, static_cast<int>((minx - lo_.x) / cell_) - 1);
        const int ix1 = std::min(nx_ - 1, static_cast<int>((maxx - lo_.x) / cell_) + 1);
        const int iy0 = std::max(0, static_cast<int>((miny - lo_.y) / cell_) - 1);
        const int iy1 = std::min(ny_ - 1, static_cast<int>((maxy - lo_.y) / cell_) + 1);
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                if (!blocked(ix, iy) && square_hits_polygon(ix, iy, poly)) set_blocked(ix, iy);
    }

  private:
    static bool point_in_polygon(EuclidPoint p, const std::vector<EuclidPoint>& poly) {
        bool in = false;
        const std::size_t n = poly.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const auto& a = poly[i];
            const auto& b = poly[j];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if (p.x < x) in = !in;
            }
        }
        return in;
    }

    static bool segments_cross(EuclidPoint a, EuclidPoint b, EuclidPoint c, EuclidPoint d) {
        const double d1 = geometry::cross(b - a, c - a);
        const double d2 = geometry::cross(b - a, d - a);
        const double d3 = geometry::cross(d - c, a - c);
        const double d4 = geometry::cross(d - c, b - c);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
    }

    bool square_hits_polygon(int ix, int iy, const std::vector<EuclidPoint>& poly) const {
        const EuclidPoint c = center_of(ix, iy);
        const double h = 0.5 * cell_;
        const EuclidPoint corners[4] = {{c.x - h, c.y - h}, {c.x + h, c.y - h},
                                        {c.x + h, c.y + h}, {c.x - h, c.y + h}};
        for (const auto& q : corners)
            if (point_in_polygon(q, poly)) return true;
        if (point_in_polygon(c, poly)) return true;
        for (const auto& p : poly)
            if (std::abs(p.x - c.x) <= h && std::abs(p.y - c.y) <= h) return true;
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            const EuclidPoint a = poly[i];
            const EuclidPoint b = poly[(i + 1) % n];
            for (int e = 0; e < 4; ++e)
                if (segments_cross(a, b, corners[e], corners[(e + 1) % 4])) return true;
        }
        return false;
    }

    EuclidPoint lo_, hi_;
    double cell_;
    int nx_, ny_;
    std::vector<std::uint8_t> blocked_;
};

/// All-cells shortest-path distances toward one goal cell.
struct DistanceField {
    std::vector<double> dist;          ///< grid-metric length, +inf if unreachable
    std::vector<std::int32_t> parent;  ///< next cell toward the goal, -1 at goal/unreachable
    std::size_t goal = 0;

    double at(std::size_t idx) const { return dist[idx]; }
    bool reachable(std::size_t idx) const { return std::isfinite(dist[idx]); }
};

/// Dijkstra from the goal cell over the free cells. Deterministic: ties are
/// settled in cell-index order and lengths derive from step counts.
inline DistanceField distance_field(const PlanGrid& g, EuclidPoint goal) {
    const auto gc = g.cell_of(goal);
    if (!gc) throw std::invalid_argument("distance_field: goal outside bounds");
    const std::size_t n = g.size();
    DistanceField f;
    f.dist.assign(n, std::numeric_limits<double>::infinity());
    f.parent.assign(n, -1);
    f.goal = g.index(gc->first, gc->second);
    if (g.blocked(f.goal)) return f; // goal blocked: everything unreachable

    const double straight = g.cell();
    const double diagonal = g.cell() * std::sqrt(2.0);
    std::vector<std::int32_t> straights(n, 0), diagonals(n, 0);

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    std::vector<std::uint8_t> settled(n, 0);
    f.dist[f.goal] = 0.0;
    pq.push({0.0, f.goal});
    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!pq.empty()) {
        const auto [dcur, cur] = pq.top();
        pq.pop();
        if (settled[cur]) continue;
        settled[cur] = 1;
        const int cx = static_cast<int>(cur % g.nx());
        const int cy = static_cast<int>(cur / g.nx());
        for (int k = 0; k < 8; ++k) {
            const int nxp = cx + dx[k];
            const int nyp = cy + dy[k];
            if (nxp < 0 || nyp < 0 || nxp >= g.nx() || nyp >= g.ny()) continue;
            const std::size_t nidx = g.index(nxp, nyp);
            if (settled[nidx] || g.blocked(nidx)) continue;
            const bool diag = k >= 4;
            const std::int32_t ns = straights[cur] + (diag ? 0 : 1);
            const std::int32_t nd = diagonals[cur] + (diag ? 1 : 0);
            const double cand = ns * straight + nd * diagonal;
            if (cand < f.dist[nidx]) {
                f.dist[nidx] = cand;
                straights[nidx] = ns;
                diagonals[nidx] = nd;
                f.parent[nidx] = static_cast<std::int32_t>(cur);
                pq.push({cand, nidx});
            }
        }
    }
    return f;
}

/// A grid shortest path between two points.
struct PathResult {
    std::vector<EuclidPoint> points; ///< cell centers from start to goal
    double length = std::numeric_limits<double>::infinity();
    bool reachable = false;
};

/// Optimal 8-connected grid path by Euclidean edge weights.
inline PathResult shortest_path(const PlanGrid& g, EuclidPoint from, EuclidPoint to) {
    const auto fc = g.cell_of(from);
    if (!fc) throw std::invalid_argument("shortest_path: start outside bounds");
    if (g.blocked(fc->first, fc->second))
        throw std::invalid_argument("shortest_path: start cell is blocked");
    const DistanceField f = distance_field(g, to);
    PathResult out;
    std::size_t cur = g.index(fc->first, fc->second);
    if (!f.reachable(cur)) return out;
    out.reachable = true;
    out.length = f.dist[cur];
    out.points.push_back(g.center_of(cur));
    while (cur != f.goal) {
        cur = static_cast<std::size_t>(f.parent[cur]);
        out.points.push_back(g.center_of(cur));
    }
    return out;
}

enum class PlanMode { Normal, SkipZone, NoSkipZone };

inline const char* to_string(PlanMode m) {
    switch (m) {
        case PlanMode::Normal: return "normal";
        case PlanMode::SkipZone: return "skip-zone";
        case PlanMode::NoSkipZone: return "no-skip-zone";
    }
    return "normal";
}

/// One planning decision: the chosen target Q, the velocity toward it and
/// the bookkeeping the trace records.
struct PlanStep {
    PlanMode mode = PlanMode::Normal;
    EuclidPoint target;
    double speed = 0.0;
    double direction = 0.0;
    double sp_length_after = std::numeric_limits<double>::infinity();
};

/// Speed and heading toward a target: heading is the bearing, speed the
/// clamped distance-per-step. A vanishing move keeps the previous heading.
inline std::pair<double, double> decide_velocity(EuclidPoint act, EuclidPoint q, double v_max,
                                                 double dt, double prev_heading) {
    if (dt <= 0.0) throw std::invalid_argument("decide_velocity: dt must be > 0");
    const double d = geometry::distance(act, q);
    if (d < 1e-12) return {0.0, prev_heading};
    return {std::min(v_max, d / dt), geometry::bearing(act, q)};
}

/**
 * @brief Swept-footprint validity of a move: true iff translating the
 *        footprint from act to w keeps its swept area clear of the region.
 *
 * The swept area of a rigid translation is the convex hull of the footprint
 * at both endpoints. A point robot reduces to segment_clear.
 */
inline bool footprint_plan(const std::optional<Footprint>& fp, EuclidPoint act, EuclidPoint w,
                           const geometry::Region& sz) {
    if (!fp) return geometry::segment_clear(sz, act, w);
    std::vector<EuclidPoint> pts = fp->placed_at(act);
    for (const auto& p : fp->vertices()) pts.push_back(p + w);
    const auto hull = geometry::convex_hull(std::move(pts));
    return !geometry::regions_overlap(geometry::Region::from_ring(hull), sz);
}

/// Everything a per-step decision needs. Zones and states are parallel
/// arrays (one entry per tracked object); the distance field is computed on
/// the static grid (shortest paths ignore moving objects).
struct PlanContext {
    const PlanGrid* grid = nullptr;
    const DistanceField* to_goal = nullptr;
    const std::vector<safezone::SafeZone>* zones = nullptr;
    const std::vector<std::pair<prediction::ObjectState, Footprint>>* zone_states = nullptr;
    EuclidPoint goal;
    double v_max = 1.0;
    double dt = 1.0;
    double prev_heading = 0.0;
    std::optional<Footprint> robot_footprint;
};

namespace detail {

/// True when the move act -> q crosses no zone: segment test for a point
/// robot, per-vertex swept segments plus hull containment for a footprint.
inline bool move_clear(EuclidPoint act, EuclidPoint q, const PlanContext& ctx) {
    const auto& zones = *ctx.zones;
    if (!ctx.robot_footprint) {
        for (const auto& z : zones)
            if (z.segment_intersects(act, q)) return false;
        return true;
    }
    const auto& fp = *ctx.robot_footprint;
    std::vector<EuclidPoint> hull = fp.placed_at(act);
    for (const auto& p : fp.vertices()) hull.push_back(p + q);
    hull = geometry::convex_hull(std::move(hull));
    for (const auto& z : zones) {
        for (std::size_t e = 0; e < hull.size(); ++e) {
            if (z.segment_intersects(hull[e], hull[(e + 1) % hull.size()])) return false;
        }
        // zone fully inside the swept hull
        bool inside = true;
        const EuclidPoint c = z.center();
        for (std::size_t e = 0; e < hull.size() && inside; ++e) {
            if (geometry::cross(hull[(e + 1) % hull.size()] - hull[e], c - hull[e]) < 0.0)
                inside = false;
        }
        if (inside) return false;
    }
    return true;
}

inline bool in_any_zone(EuclidPoint p, const std::vector<safezone::SafeZone>& zones) {
    for (const auto& z : zones)
        if (z.contains(p)) return true;
    return false;
}

struct Candidate {
    double dist;
    double turn;
    int ix, iy;
    EuclidPoint center;
};

inline bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.turn != b.turn) return a.turn < b.turn;
    if (a.ix != b.ix) return a.ix < b.ix;
    return a.iy < b.iy;
}

inline double turn_cost(EuclidPoint act, EuclidPoint q, double prev_heading) {
    if (geometry::distance(act, q) < 1e-12) return 0.0;
    return std::abs(geometry::wrap_signed(geometry::bearing(act, q) - prev_heading));
}

} // namespace detail

/**
 * @brief Normal-mode target selection: the free cell minimizing the
 *        shortest-path-to-goal length among cells reachable by a straight
 *        zone-free move. Returns nothing when no candidate exists (the
 *        caller escalates to run_away).
 */
inline std::optional<PlanStep> select_target(EuclidPoint act, const PlanContext& ctx) {
    const PlanGrid& g = *ctx.grid;
    const DistanceField& f = *ctx.to_goal;
    const auto& zones = *ctx.zones;

    std::vector<detail::Candidate> cands;
    cands.reserve(g.size() / 4);
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const std::size_t idx = g.index(ix, iy);
            if (g.blocked(idx)) continue;
            const EuclidPoint c = g.center_of(ix, iy);
            cands.push_back({f.at(idx), detail::turn_cost(act, c, ctx.prev_heading), ix, iy, c});
        }
    }
    std::sort(cands.begin(), cands.end(), detail::candidate_less);

    for (const auto& cand : cands) {
        if (!std::isfinite(cand.dist)) break; // only unreachable cells remain
        if (detail::in_any_zone(cand.center, zones)) continue;
        if (!detail::move_clear(act, cand.center, ctx)) continue;
        PlanStep step;
        step.mode = PlanMode::Normal;
        step.target = cand.center;
        std::tie(step.speed, step.direction) =
            decide_velocity(act, cand.center, ctx.v_max, ctx.dt, ctx.prev_heading);
        const EuclidPoint endpoint = act + (step.speed * ctx.dt) * geometry::unit(step.direction);
        if (const auto ec = g.cell_of(endpoint))
            step.sp_length_after = f.at(g.index(ec->first, ec->second));
        return step;
    }

    // Goal unreachable but the robot is unthreatened: hold position.
    bool any_reachable = false;
    for (const auto& cand : cands)
        if (std::isfinite(cand.dist)) {
            any_reachable = true;
            break;
        }
    if (!any_reachable && !detail::in_any_zone(act, zones)) {
        PlanStep step;
        step.mode = PlanMode::Normal;
        step.target = act;
        step.speed = 0.0;
        step.direction = ctx.prev_heading;
        if (const auto ac = g.cell_of(act))
            step.sp_length_after = f.at(g.index(ac->first, ac->second));
        return step;
    }
    return std::nullopt;
}

/**
 * @brief High-risk fallback. With a nonempty skip zone the robot jumps to
 *        the skip-zone cell with the smallest remaining path; otherwise it
 *        picks the reachable cell with the least threat density (1e-9
 *        argmin tolerance), breaking ties by remaining path length.
 */
inline std::optional<PlanStep> run_away(EuclidPoint act, const safezone::ReachableDisc& disc,
                                        const std::vector<std::size_t>& threatening,
                                        const PlanContext& ctx) {
    if (threatening.empty()) return std::nullopt; // degenerate: caller falls through
    const PlanGrid& g = *ctx.grid;
    const DistanceField& f = *ctx.to_goal;
    const auto& zones = *ctx.zones;

    std::vector<safezone::SafeZone> threat_zones;
    std::vector<std::pair<prediction::ObjectState, Footprint>> threat_states;
    for (std::size_t i : threatening) {
        threat_zones.push_back((*ctx.zones)[i]);
        threat_states.push_back((*ctx.zone_states)[i]);
    }
    const geometry::Region d_region = safezone::skip_zone(disc, threat_zones);

    // Candidate cells: centers reachable in one step and not inside a wall.
    std::vector<detail::Candidate> in_disc;
    auto clamp_cell = [&](double x, double y) {
        const EuclidPoint p{std::clamp(x, g.lo().x, g.hi().x), std::clamp(y, g.lo().y, g.hi().y)};
        return *g.cell_of(p);
    };
    const auto lo = clamp_cell(disc.center.x - disc.radius, disc.center.y - disc.radius);
    const auto hi = clamp_cell(disc.center.x + disc.radius, disc.center.y + disc.radius);
    const int ix0 = lo.first;
    const int iy0 = lo.second;
    const int ix1 = hi.first;
    const int iy1 = hi.second;
    for (int iy = iy0; iy <= iy1; ++iy) {
        for (int ix = ix0; ix <= ix1; ++ix) {
            const EuclidPoint c = g.center_of(ix, iy);
            if (geometry::distance(c, disc.center) > disc.radius) continue;
            if (g.blocked(ix, iy)) continue; // never target a wall cell
            in_disc.push_back({f.at(g.index(ix, iy)),
                               detail::turn_cost(act, c, ctx.prev_heading), ix, iy, c});
        }
    }

    auto finish = [&](const detail::Candidate& cand, PlanMode mode) {
        PlanStep step;
        step.mode = mode;
        step.target = cand.center;
        std::tie(step.speed, step.direction) =
            decide_velocity(act, cand.center, ctx.v_max, ctx.dt, ctx.prev_heading);
        if (const auto ec = g.cell_of(act + (step.speed * ctx.dt) * geometry::unit(step.direction)))
            step.sp_length_after = f.at(g.index(ec->first, ec->second));
        return step;
    };

    // Skip-zone branch: cells inside D, preferring those clear of the
    // remaining (non-threatening) zones.
    std::vector<detail::Candidate> in_skip;
    for (const auto& cand : in_disc) {
        if (!geometry::point_in(d_region, cand.center)) continue;
        bool in_other = false;
        for (std::size_t i = 0; i < zones.size() && !in_other; ++i) {
            if (std::find(threatening.begin(), threatening.end(), i) != threatening.end())
                continue;
            in_other = zones[i].contains(cand.center);
        }
        if (!in_other) in_skip.push_back(cand);
    }
    if (!in_skip.empty()) {
        return finish(*std::min_element(in_skip.begin(), in_skip.end(), detail::candidate_less),
                      PlanMode::SkipZone);
    }

    // No skip zone: least-threat cells, then shortest remaining path.
    if (in_disc.empty()) return std::nullopt;
    std::vector<double> density(in_disc.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < in_disc.size(); ++i) {
        density[i] = safezone::threat_density(in_disc[i].center, threat_states, ctx.dt);
        best = std::min(best, density[i]);
    }
    constexpr double kArgminTol = 1e-9;
    std::optional<detail::Candidate> chosen;
    for (std::size_t i = 0; i < in_disc.size(); ++i) {
        if (density[i] > best + kArgminTol) continue;
        if (!chosen || detail::candidate_less(in_disc[i], *chosen)) chosen = in_disc[i];
    }
    return finish(*chosen, PlanMode::NoSkipZone);
}

/**
 * @brief Full per-step decision cascade: normal target selection while the
 *        robot is outside every zone, run-away once its position falls
 *        inside one, stay-put as the last resort.
 */
inline PlanStep decide(EuclidPoint act, const PlanContext& ctx) {
    const auto& zones = *ctx.zones;
    std::vector<std::size_t> threatening;
    for (std::size_t i = 0; i < zones.size(); ++i)
        if (zones[i].contains(act)) threatening.push_back(i);

    const safezone::ReachableDisc disc{act, ctx.v_max * ctx.dt};
    if (threatening.empty()) {
        if (auto step = select_target(act, ctx)) return *step;
        std::vector<std::size_t> all(zones.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        if (auto step = run_away(act, disc, all, ctx)) return *step;
    } else if (auto step = run_away(act, disc, threatening, ctx)) {
        return *step;
    }

    PlanStep stay;
    stay.mode = PlanMode::Normal;
    stay.target = act;
    stay.speed = 0.0;
    stay.direction = ctx.prev_heading;
    if (const auto ac = ctx.grid->cell_of(act))
        stay.sp_length_after = ctx.to_goal->at(ctx.grid->index(ac->first, ac->second));
    return stay;
}

/**
 * @brief The scale-free time/deviation objective of a completed trace.
 *
 * score = sqrt((T / t_min)^2 + (sum_t min_P |P_t - P|^2 / |SP|^2)^2) with
 * the inner minimum taken over the shortest-path polyline. Invalid traces
 * (collisions, or an empty trace that never reaches the goal) yield nothing.
 */
inline std::optional<double> evaluate_objective(const std::vector<EuclidPoint>& positions,
                                                const std::vector<EuclidPoint>& shortest,
                                                double shortest_length, int t_min, bool valid) {
    if (!valid || positions.empty()) return std::nullopt;
    const std::size_t T = positions.size() - 1;
    if (T == 0 && geometry::distance(positions.front(), shortest.back()) > 1e-9)
        return std::nullopt;
    if (shortest_length <= 0.0 || t_min < 1) return std::nullopt;

    auto dist2_to_polyline = [&](EuclidPoint p) {
        double best = std::numeric_limits<double>::infinity();
        if (shortest.size() == 1) return geometry::distance(p, shortest[0]) *
                                         geometry::distance(p, shortest[0]);
        for (std::size_t i = 0; i + 1 < shortest.size(); ++i) {
            const EuclidPoint a = shortest[i];
            const EuclidPoint b = shortest[i + 1];
            const EuclidPoint ab = b - a;
            const double len2 = geometry::dot(ab, ab);
            const double t =
                len2 > 0.0 ? std::clamp(geometry::dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
            const EuclidPoint proj = a + t * ab;
            const double dx = p.x - proj.x, dy = p.y - proj.y;
            best = std::min(best, dx * dx + dy * dy);
        }
        return best;
    };

    double deviation = 0.0;
    for (const auto& p : positions) deviation += dist2_to_polyline(p);
    deviation /= shortest_length * shortest_length;
    const double time_ratio = static_cast<double>(T) / static_cast<double>(t_min);
    return std::sqrt(time_ratio * time_ratio + deviation * deviation);
}

} // namespace safepath::planner
