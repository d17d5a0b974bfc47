#pragma once
/**
 * @file  simulation.hpp
 * @brief World stepping, the ground-truth collision oracle, the end-to-end
 *        run loop and trace serialization.
 *
 * The simulator owns the true object states; the planner sees observations
 * (within the sensing radius) and its own predictions only. Collision
 * checking interpolates all motions across sub-steps and never consults
 * planner beliefs.
 */

#include "safepath/geometry.hpp"
#include "safepath/planner.hpp"
#include "safepath/prediction.hpp"
#include "safepath/region.hpp"
#include "safepath/safezone.hpp"
#include "safepath/scenario.hpp"
#include "safepath/uncertainty.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace safepath::sim {

enum class Outcome { Goal, Timeout, Collision };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Goal: return "goal";
        case Outcome::Timeout: return "timeout";
        case Outcome::Collision: return "collision";
    }
    return "timeout";
}

struct CollisionEvent {
    std::string object_id;
    double fraction = 0.0; ///< sub-step fraction of the step where contact begins
};

/// What the planner believed about an object when it planned this step.
struct BelievedState {
    double expected_speed = 0.0;
    double expected_direction = 0.0;
    double sigma_v = 0.0;
    double sigma_d = 0.0;
    bool moving = false;
    bool deterministic = false;
};

struct ObjectRecord {
    std::string id;
    geometry::EuclidPoint position;
    double speed = 0.0;     ///< realized per-step displacement
    double direction = 0.0; ///< realized heading of the last step
    bool visible = true;
    std::optional<BelievedState> believed;
};

struct StepRecord {
    long step = 0;
    geometry::EuclidPoint robot_position;
    double robot_heading = 0.0;
    double robot_speed = 0.0;
    planner::PlanStep plan;
    std::vector<ObjectRecord> objects;
    std::vector<std::vector<geometry::EuclidPoint>> safe_zones; ///< union outline rings
    std::vector<CollisionEvent> collisions; ///< events while arriving at this step
};

struct Trace {
    Scenario scenario;
    std::uint64_t seed = 0;
    std::vector<StepRecord> steps;
    Outcome outcome = Outcome::Timeout;
    long steps_used = 0;
    bool valid = true; ///< no ground-truth collisions
    std::optional<double> objective;
    std::vector<geometry::EuclidPoint> shortest_path_points;
    double shortest_length = 0.0;
    long t_min = 1;
};

// ---------------------------------------------------------------------------
// Collision oracle
// ---------------------------------------------------------------------------

/// Exact polygon overlap with zero-area boundary contact permitted.
inline bool footprints_collide(const std::vector<geometry::EuclidPoint>& a,
                               const std::vector<geometry::EuclidPoint>& b) {
    double alox = a[0].x, ahix = a[0].x, aloy = a[0].y, ahiy = a[0].y;
    for (const auto& p : a) {
        alox = std::min(alox, p.x); ahix = std::max(ahix, p.x);
        aloy = std::min(aloy, p.y); ahiy = std::max(ahiy, p.y);
    }
    double blox = b[0].x, bhix = b[0].x, bloy = b[0].y, bhiy = b[0].y;
    for (const auto& p : b) {
        blox = std::min(blox, p.x); bhix = std::max(bhix, p.x);
        bloy = std::min(bloy, p.y); bhiy = std::max(bhiy, p.y);
    }
    if (alox > bhix || blox > ahix || aloy > bhiy || bloy > ahiy) return false;
    return geometry::regions_overlap(geometry::Region::from_ring(a),
                                     geometry::Region::from_ring(b), 1e-9);
}

inline bool point_in_ring(geometry::EuclidPoint p, const std::vector<geometry::EuclidPoint>& poly) {
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

/// One moving body over a step: footprint vertices at the start plus its
/// displacement. Nullopt vertices mean a point body.
struct MotionSample {
    std::string id;
    std::optional<std::vector<geometry::EuclidPoint>> start_ring;
    geometry::EuclidPoint start_center;
    geometry::EuclidPoint displacement;
};

/**
 * @brief Ground-truth collision check across one step.
 *
 * Linear interpolation at `substeps` fractions; reports the first offending
 * fraction per object. Consults true states only.
 */
inline std::vector<CollisionEvent> collision_check(const MotionSample& robot,
                                                   const std::vector<MotionSample>& objects,
                                                   int substeps) {
    std::vector<CollisionEvent> events;
    for (const auto& obj : objects) {
        if (!obj.start_ring) continue;
        for (int k = 1; k <= substeps; ++k) {
            const double tau = static_cast<double>(k) / substeps;
            std::vector<geometry::EuclidPoint> obj_ring = *obj.start_ring;
            for (auto& p : obj_ring) p = p + tau * obj.displacement;
            bool hit;
            if (robot.start_ring) {
                std::vector<geometry::EuclidPoint> rob_ring = *robot.start_ring;
                for (auto& p : rob_ring) p = p + tau * robot.displacement;
                hit = footprints_collide(rob_ring, obj_ring);
            } else {
                hit = point_in_ring(robot.start_center + tau * robot.displacement, obj_ring);
            }
            if (hit) {
                events.push_back({obj.id, tau});
                break;
            }
        }
    }
    return events;
}

// ---------------------------------------------------------------------------
// World
// ---------------------------------------------------------------------------

class World {
  public:
    World(Scenario sc, std::uint64_t seed)
        : sc_(std::move(sc)),
          seed_(seed),
          grid_(sc_.env_lo, sc_.env_hi, sc_.grid_cell()),
          world_rng_(seed),
          planner_rng_(uncertainty::RngStream(seed).derive(0x706c616e)) {
        if (sc_.robot.shape) robot_fp_ = sc_.robot.shape->build();

        for (const auto& s : sc_.statics) {
            const Footprint fp = s.shape.build();
            const auto ring = fp.placed_at(s.position);
            grid_.block_polygon(ring);
            static_rings_.push_back(ring);
            prediction::ObjectState st;
            st.pose = geometry::euclid_to_polar(s.position);
            st.deterministic = true;
            st.direction_model.moving = false;
            static_zones_.push_back(safezone::build_safe_zone(
                st, fp, sc_.params.confidence_z, zone_params(), "static", 0));
            static_states_.emplace_back(st, fp);
        }

        field_ = planner::distance_field(grid_, sc_.robot.goal);
        build_static_path();

        long index = 0;
        for (const auto& spec : sc_.objects) {
            ObjRt o;
            o.spec = &spec;
            o.fp = spec.shape.build();
            o.pos = spec.initial_position;
            o.prev_pos = spec.initial_position;
            o.realized_speed = spec.initial_speed * sc_.params.dt;
            o.realized_dir = spec.initial_direction;
            o.history = prediction::StateHistory(
                static_cast<std::size_t>(sc_.params.history),
                static_cast<std::size_t>(sc_.params.history));
            o.rng = world_rng_.derive(0x6f626a00 + static_cast<std::uint64_t>(index++));
            objects_.push_back(std::move(o));
        }

        robot_pos_ = sc_.robot.start;
        robot_heading_ = geometry::bearing(sc_.robot.start, sc_.robot.goal);
    }

    /// Run to termination and return the trace.
    Trace run() {
        Trace trace;
        trace.scenario = sc_;
        trace.seed = seed_;
        trace.shortest_path_points = static_path_points_;
        trace.shortest_length = static_path_length_;
        trace.t_min = t_min_;

        std::vector<CollisionEvent> arriving;
        bool collided = false;
        Outcome outcome = Outcome::Timeout;
        long t = 0;
        std::vector<geometry::EuclidPoint> robot_positions{robot_pos_};

        while (true) {
            observe(t);
            const auto [zones, states, believed] = plan_zones(t);
            planner::PlanContext ctx;
            ctx.grid = &grid_;
            ctx.to_goal = &field_;
            ctx.zones = &zones;
            ctx.zone_states = &states;
            ctx.goal = sc_.robot.goal;
            ctx.v_max = sc_.robot.v_max;
            ctx.dt = sc_.params.dt;
            ctx.prev_heading = robot_heading_;
            ctx.robot_footprint = robot_fp_;
            const planner::PlanStep plan = planner::decide(robot_pos_, ctx);

            trace.steps.push_back(record_step(t, plan, zones, believed, arriving));

            if (collided) {
                outcome = Outcome::Collision;
                break;
            }
            if (geometry::distance(robot_pos_, sc_.robot.goal) <= grid_.cell()) {
                outcome = Outcome::Goal;
                break;
            }
            if (t >= sc_.params.max_steps) {
                outcome = Outcome::Timeout;
                break;
            }

            arriving = advance(t, plan);
            collided = !arriving.empty();
            robot_positions.push_back(robot_pos_);
            ++t;
        }

        trace.outcome = outcome;
        trace.steps_used = t;
        trace.valid = outcome != Outcome::Collision;
        const bool scoreable = trace.valid && outcome == Outcome::Goal &&
                               static_path_length_ > 0.0;
        trace.objective = planner::evaluate_objective(robot_positions, static_path_points_,
                                                      static_path_length_, t_min_, scoreable);
        return trace;
    }

    const planner::PlanGrid& grid() const { return grid_; }
    double static_path_length() const { return static_path_length_; }

  private:
    struct ObjRt {
        const ObjectSpec* spec = nullptr;
        Footprint fp = Footprint::circle(1.0, 8);
        geometry::EuclidPoint pos;
        geometry::EuclidPoint prev_pos;
        double realized_speed = 0.0; ///< per-step displacement of the last step
        double realized_dir = 0.0;
        std::size_t waypoint = 0;
        bool visible = false;
        prediction::StateHistory history{5, 5};
        uncertainty::RngStream rng{0};
    };

    safezone::ZoneParams zone_params() const {
        safezone::ZoneParams zp;
        zp.angular_resolution = sc_.params.zone_resolution;
        return zp;
    }

    void build_static_path() {
        const auto sc_cell = grid_.cell_of(sc_.robot.start);
        static_path_length_ = std::numeric_limits<double>::infinity();
        if (sc_cell && !grid_.blocked(sc_cell->first, sc_cell->second)) {
            std::size_t cur = grid_.index(sc_cell->first, sc_cell->second);
            if (field_.reachable(cur)) {
                static_path_length_ = field_.dist[cur];
                static_path_points_.push_back(grid_.center_of(cur));
                while (cur != field_.goal) {
                    cur = static_cast<std::size_t>(field_.parent[cur]);
                    static_path_points_.push_back(grid_.center_of(cur));
                }
            }
        }
        if (std::isfinite(static_path_length_) && static_path_length_ > 0.0) {
            t_min_ = static_cast<long>(
                std::ceil(static_path_length_ / (sc_.robot.v_max * sc_.params.dt) - 1e-9));
            t_min_ = std::max<long>(t_min_, 1);
        } else {
            t_min_ = 1;
        }
    }

    /// Commanded motion of a deterministic object for the step t -> t+1,
    /// in (speed per time unit, direction).
    std::pair<double, double> script_motion(const ObjRt& o, long t) const {
        const auto& m = o.spec->motion;
        if (m.kind == MotionSpec::Kind::Steps) {
            if (m.steps.empty()) return {0.0, o.realized_dir};
            if (static_cast<std::size_t>(t) < m.steps.size()) {
                const auto& s = m.steps[static_cast<std::size_t>(t)];
                return {s.speed, s.direction};
            }
            if (m.hold_last) return {m.steps.back().speed, m.steps.back().direction};
            return {0.0, o.realized_dir};
        }
        if (m.kind == MotionSpec::Kind::Waypoints) {
            if (o.waypoint >= m.waypoints.size()) return {0.0, o.realized_dir};
            const auto wp = m.waypoints[o.waypoint];
            const double d = geometry::distance(o.pos, wp);
            if (d < 1e-9) return {0.0, o.realized_dir};
            return {std::min(m.speed, d / sc_.params.dt), geometry::bearing(o.pos, wp)};
        }
        return {0.0, o.realized_dir};
    }

    void observe(long t) {
        for (auto& o : objects_) {
            const double range = geometry::distance(o.pos, robot_pos_);
            o.visible = range <= sc_.params.sensing_radius;
            if (!o.visible) continue;
            prediction::ObjectState st;
            st.pose = geometry::euclid_to_polar(o.pos);
            st.expected_speed = o.realized_speed;
            st.expected_direction = geometry::normalize_angle(o.realized_dir);
            st.deterministic = o.spec->deterministic();
            st.direction_model.moving = o.realized_speed > 1e-9;
            prediction::update_states(o.history, {{t, st}});
        }
    }

    /// Zones for step t+1 from current beliefs, plus the per-object believed
    /// state for the trace.
    std::tuple<std::vector<safezone::SafeZone>,
               std::vector<std::pair<prediction::ObjectState, Footprint>>,
               std::vector<std::optional<BelievedState>>>
    plan_zones(long t) {
        std::vector<safezone::SafeZone> zones = static_zones_;
        std::vector<std::pair<prediction::ObjectState, Footprint>> states = static_states_;
        std::vector<std::optional<BelievedState>> believed(objects_.size());

        for (std::size_t i = 0; i < objects_.size(); ++i) {
            auto& o = objects_[i];
            if (!o.visible || o.history.empty()) continue;
            prediction::ObjectState st;
            st.pose = geometry::euclid_to_polar(o.pos);
            BelievedState bel;
            if (o.spec->deterministic()) {
                const auto [v, d] = script_motion(o, t);
                st.expected_speed = v * sc_.params.dt;
                st.expected_direction = geometry::normalize_angle(d);
                st.deterministic = true;
                st.direction_model.moving = v > 1e-9;
                bel = {st.expected_speed, st.expected_direction, 0.0, 0.0,
                       st.direction_model.moving, true};
            } else {
                prediction::Prediction pred;
                switch (sc_.params.predictor) {
                    case PredictorKind::MovingAverage:
                        pred = prediction::predict_moving_average(o.history, 1);
                        break;
                    case PredictorKind::NaiveAr:
                        pred = prediction::predict_naive_ar(o.history, 1);
                        break;
                    case PredictorKind::GeneralizedAr: {
                        prediction::GeneralizedArOptions opts;
                        opts.white_noise = sc_.params.gen_ar_white_noise;
                        pred = prediction::predict_generalized_ar(o.history, 1, planner_rng_,
                                                                  opts);
                        break;
                    }
                }
                const double sv = o.history.sigma_v(sc_.params.sigma_prior_v);
                const double sd = o.history.sigma_d(sc_.params.sigma_prior_d);
                const bool moving = o.history.latest().expected_speed > 1e-9;
                st.expected_speed = std::max(0.0, pred.expected_speed);
                st.expected_direction = geometry::normalize_angle(pred.expected_direction);
                st.deterministic = false;
                st.speed_model = {st.expected_speed, sv};
                st.direction_model = {st.expected_direction, sd, moving};
                o.history.note_prediction(t + 1, st.expected_speed, st.expected_direction);
                bel = {st.expected_speed, st.expected_direction, sv, sd, moving, false};
            }
            zones.push_back(safezone::build_safe_zone(st, o.fp, sc_.params.confidence_z,
                                                      zone_params(), o.spec->id, t + 1));
            states.emplace_back(st, o.fp);
            believed[i] = bel;
        }
        return {std::move(zones), std::move(states), std::move(believed)};
    }

    StepRecord record_step(long t, const planner::PlanStep& plan,
                           const std::vector<safezone::SafeZone>& zones,
                           const std::vector<std::optional<BelievedState>>& believed,
                           const std::vector<CollisionEvent>& arriving) {
        StepRecord rec;
        rec.step = t;
        rec.robot_position = robot_pos_;
        rec.robot_heading = robot_heading_;
        rec.robot_speed = robot_speed_;
        rec.plan = plan;
        rec.collisions = arriving;
        for (std::size_t i = 0; i < objects_.size(); ++i) {
            const auto& o = objects_[i];
            rec.objects.push_back({o.spec->id, o.pos, o.realized_speed,
                                   geometry::normalize_angle(o.realized_dir), o.visible,
                                   believed[i]});
        }
        const geometry::Region sz = safezone::union_safe_zones(zones);
        namespace bg = geometry::detail::bg;
        geometry::detail::BgMultiPolygon simplified;
        bg::simplify(sz.multi_polygon(), simplified, grid_.cell() / 8.0);
        geometry::Region out;
        out.multi_polygon() = simplified;
        rec.safe_zones = out.rings();
        return rec;
    }

    /// Advance the world one step and return collision events along the way.
    std::vector<CollisionEvent> advance(long t, const planner::PlanStep& plan) {
        std::vector<MotionSample> motions;
        for (auto& o : objects_) {
            double v, d; // speed per time unit, heading
            if (o.spec->deterministic()) {
                std::tie(v, d) = script_motion(o, t);
            } else {
                const auto& m = o.spec->motion;
                const bool moving = o.realized_speed > 1e-9;
                uncertainty::SpeedErrorModel mv{m.base_speed, m.sigma_v};
                uncertainty::DirectionErrorModel md{m.base_direction, m.sigma_d, moving};
                const auto err = uncertainty::sample_errors(mv, md, o.rng);
                v = m.base_speed + err.delta_v;
                d = moving ? geometry::normalize_angle(m.base_direction + err.delta_theta)
                           : err.delta_theta;
            }
            const geometry::EuclidPoint disp = (v * sc_.params.dt) * geometry::unit(d);
            motions.push_back({o.spec->id, o.fp.placed_at(o.pos), o.pos, disp});
        }
        for (std::size_t i = 0; i < static_rings_.size(); ++i)
            motions.push_back({"static[" + std::to_string(i) + "]", static_rings_[i],
                               sc_.statics[i].position, {0.0, 0.0}});

        const geometry::EuclidPoint robot_disp =
            (plan.speed * sc_.params.dt) * geometry::unit(plan.direction);
        MotionSample robot;
        robot.id = "robot";
        robot.start_center = robot_pos_;
        robot.displacement = robot_disp;
        if (robot_fp_) robot.start_ring = robot_fp_->placed_at(robot_pos_);

        const auto events = collision_check(robot, motions, sc_.params.collision_substeps);

        for (std::size_t i = 0; i < objects_.size(); ++i) {
            auto& o = objects_[i];
            o.prev_pos = o.pos;
            o.pos = o.pos + motions[i].displacement;
            o.realized_speed = geometry::norm(motions[i].displacement);
            if (o.realized_speed > 1e-12)
                o.realized_dir = std::atan2(motions[i].displacement.y, motions[i].displacement.x);
            if (o.spec->motion.kind == MotionSpec::Kind::Waypoints &&
                o.waypoint < o.spec->motion.waypoints.size()) {
                if (geometry::distance(o.pos, o.spec->motion.waypoints[o.waypoint]) < 1e-6) {
                    ++o.waypoint;
                    if (o.waypoint >= o.spec->motion.waypoints.size() && o.spec->motion.loop)
                        o.waypoint = 0;
                }
            }
        }
        robot_pos_ = robot_pos_ + robot_disp;
        robot_heading_ = plan.direction;
        robot_speed_ = plan.speed;
        return events;
    }

    Scenario sc_;
    std::uint64_t seed_;
    planner::PlanGrid grid_;
    planner::DistanceField field_;
    std::vector<geometry::EuclidPoint> static_path_points_;
    double static_path_length_ = std::numeric_limits<double>::infinity();
    long t_min_ = 1;

    std::optional<Footprint> robot_fp_;
    std::vector<std::vector<geometry::EuclidPoint>> static_rings_;
    std::vector<safezone::SafeZone> static_zones_;
    std::vector<std::pair<prediction::ObjectState, Footprint>> static_states_;
    std::vector<ObjRt> objects_;

    geometry::EuclidPoint robot_pos_;
    double robot_heading_ = 0.0;
    double robot_speed_ = 0.0;

    uncertainty::RngStream world_rng_;
    uncertainty::RngStream planner_rng_;
};

/// Convenience wrapper: run a scenario at a seed.
inline Trace run(const Scenario& sc, std::optional<std::uint64_t> seed = std::nullopt) {
    World w(sc, seed.value_or(sc.params.seed));
    return w.run();
}

// ---------------------------------------------------------------------------
// Trace JSON
// ---------------------------------------------------------------------------

namespace detail {

inline json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline double null_or_infinity(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

} // namespace detail

inline json to_json(const Trace& tr) {
    json steps = json::array();
    for (const auto& s : tr.steps) {
        json objs = json::array();
        for (const auto& o : s.objects) {
            json jo{{"id", o.id},
                    {"position", detail::point_to_json(o.position)},
                    {"speed", o.speed},
                    {"direction", o.direction},
                    {"visible", o.visible}};
            if (o.believed) {
                jo["believed"] = {{"speed", o.believed->expected_speed},
                                  {"direction", o.believed->expected_direction},
                                  {"sigma_v", o.believed->sigma_v},
                                  {"sigma_d", o.believed->sigma_d},
                                  {"moving", o.believed->moving},
                                  {"deterministic", o.believed->deterministic}};
            } else {
                jo["believed"] = nullptr;
            }
            objs.push_back(std::move(jo));
        }
        json zones = json::array();
        for (const auto& ring : s.safe_zones) {
            json jr = json::array();
            for (const auto& p : ring) jr.push_back(detail::point_to_json(p));
            zones.push_back(std::move(jr));
        }
        json cols = json::array();
        for (const auto& c : s.collisions)
            cols.push_back({{"id", c.object_id}, {"fraction", c.fraction}});
        steps.push_back(
            {{"step", s.step},
             {"robot",
              {{"position", detail::point_to_json(s.robot_position)},
               {"heading", s.robot_heading},
               {"speed", s.robot_speed}}},
             {"plan",
              {{"mode", planner::to_string(s.plan.mode)},
               {"target", detail::point_to_json(s.plan.target)},
               {"speed", s.plan.speed},
               {"direction", s.plan.direction},
               {"sp_length_after", detail::finite_or_null(s.plan.sp_length_after)}}},
             {"objects", objs},
             {"safe_zones", zones},
             {"collisions", cols}});
    }
    json sp = json::array();
    for (const auto& p : tr.shortest_path_points) sp.push_back(detail::point_to_json(p));
    json terminal{{"outcome", to_string(tr.outcome)},
                  {"steps", tr.steps_used},
                  {"valid", tr.valid}};
    terminal["objective"] = tr.objective ? json(*tr.objective) : json(nullptr);
    return json{{"schema", "safepath-trace-v1"},
                {"scenario", to_json(tr.scenario)},
                {"seed", tr.seed},
                {"shortest_path",
                 {{"length", detail::finite_or_null(tr.shortest_length)},
                  {"points", sp},
                  {"t_min", tr.t_min}}},
                {"steps", steps},
                {"terminal", terminal}};
}

inline Trace trace_from_json(const json& j) {
    Trace tr;
    if (!j.contains("schema") || j.at("schema") != "safepath-trace-v1")
        throw LoadError("schema", "not a safepath trace");
    tr.scenario = load_scenario(j.at("scenario"));
    tr.seed = j.at("seed").get<std::uint64_t>();
    const auto& sp = j.at("shortest_path");
    tr.shortest_length = detail::null_or_infinity(sp.at("length"));
    tr.t_min = sp.at("t_min").get<long>();
    for (const auto& p : sp.at("points"))
        tr.shortest_path_points.push_back(detail::point_from_json(p, "shortest_path.points"));
    for (const auto& js : j.at("steps")) {
        StepRecord s;
        s.step = js.at("step").get<long>();
        s.robot_position = detail::point_from_json(js.at("robot").at("position"), "robot");
        s.robot_heading = js.at("robot").at("heading").get<double>();
        s.robot_speed = js.at("robot").at("speed").get<double>();
        const auto& jp = js.at("plan");
        const std::string mode = jp.at("mode").get<std::string>();
        s.plan.mode = mode == "skip-zone" ? planner::PlanMode::SkipZone
                      : mode == "no-skip-zone" ? planner::PlanMode::NoSkipZone
                                               : planner::PlanMode::Normal;
        s.plan.target = detail::point_from_json(jp.at("target"), "plan.target");
        s.plan.speed = jp.at("speed").get<double>();
        s.plan.direction = jp.at("direction").get<double>();
        s.plan.sp_length_after = detail::null_or_infinity(jp.at("sp_length_after"));
        for (const auto& jo : js.at("objects")) {
            ObjectRecord o;
            o.id = jo.at("id").get<std::string>();
            o.position = detail::point_from_json(jo.at("position"), "objects.position");
            o.speed = jo.at("speed").get<double>();
            o.direction = jo.at("direction").get<double>();
            o.visible = jo.at("visible").get<bool>();
            if (!jo.at("believed").is_null()) {
                const auto& jb = jo.at("believed");
                o.believed = BelievedState{jb.at("speed").get<double>(),
                                           jb.at("direction").get<double>(),
                                           jb.at("sigma_v").get<double>(),
                                           jb.at("sigma_d").get<double>(),
                                           jb.at("moving").get<bool>(),
                                           jb.at("deterministic").get<bool>()};
            }
            s.objects.push_back(std::move(o));
        }
        for (const auto& jr : js.at("safe_zones")) {
            std::vector<geometry::EuclidPoint> ring;
            for (const auto& p : jr) ring.push_back(detail::point_from_json(p, "safe_zones"));
            s.safe_zones.push_back(std::move(ring));
        }
        for (const auto& jc : js.at("collisions"))
            s.collisions.push_back(
                {jc.at("id").get<std::string>(), jc.at("fraction").get<double>()});
        tr.steps.push_back(std::move(s));
    }
    const auto& jt = j.at("terminal");
    const std::string out = jt.at("outcome").get<std::string>();
    tr.outcome = out == "goal" ? Outcome::Goal
                 : out == "collision" ? Outcome::Collision
                                      : Outcome::Timeout;
    tr.steps_used = jt.at("steps").get<long>();
    tr.valid = jt.at("valid").get<bool>();
    if (!jt.at("objective").is_null()) tr.objective = jt.at("objective").get<double>();
    return tr;
}

} // namespace safepath::sim
