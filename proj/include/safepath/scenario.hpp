#pragma once
/**
 * @file  scenario.hpp
 * @brief Scenario description and its JSON form: environment, static
 *        obstacles, scripted objects, robot configuration and parameters.
 *
 * The on-disk schema is documented in docs/file-formats.md. Loading
 * validates every invariant and reports the offending field.
 */

#include "safepath/geometry.hpp"
#include "safepath/planner.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace safepath::sim {

using geometry::EuclidPoint;
using geometry::Footprint;
using nlohmann::json;

/// Scenario loading/validation failure; carries the offending field path.
class LoadError : public std::runtime_error {
  public:
    LoadError(const std::string& field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// Declarative footprint shape.
struct ShapeSpec {
    enum class Kind { Circle, Rectangle, Polygon };
    Kind kind = Kind::Circle;
    double radius = 0.5;
    int segments = 48;
    double width = 1.0, height = 1.0;
    std::vector<EuclidPoint> vertices;

    Footprint build() const {
        switch (kind) {
            case Kind::Circle: return Footprint::circle(radius, segments);
            case Kind::Rectangle: return Footprint::rectangle(width, height);
            case Kind::Polygon: return Footprint::from_vertices(vertices);
        }
        throw std::logic_error("unreachable");
    }

    friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

struct StaticObstacle {
    ShapeSpec shape;
    EuclidPoint position;

    friend bool operator==(const StaticObstacle&, const StaticObstacle&) = default;
};

/// Motion script of one object.
struct MotionSpec {
    enum class Kind { Waypoints, Steps, Stochastic };
    Kind kind = Kind::Steps;

    // waypoints
    std::vector<EuclidPoint> waypoints;
    double speed = 0.0;
    bool loop = false;

    // explicit step list
    struct Step {
        double speed = 0.0;
        double direction = 0.0;
        friend bool operator==(const Step&, const Step&) = default;
    };
    std::vector<Step> steps;
    bool hold_last = true;

    // stochastic base motion
    double base_speed = 0.0;
    double base_direction = 0.0;
    double sigma_v = 0.0;
    double sigma_d = 0.0;

    bool stochastic() const { return kind == Kind::Stochastic; }

    friend bool operator==(const MotionSpec&, const MotionSpec&) = default;
};

struct ObjectSpec {
    std::string id;
    ShapeSpec shape;
    EuclidPoint initial_position;
    double initial_direction = 0.0;
    double initial_speed = 0.0;
    MotionSpec motion;

    bool deterministic() const { return !motion.stochastic(); }

    friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

enum class PredictorKind { MovingAverage, NaiveAr, GeneralizedAr };

inline const char* to_string(PredictorKind p) {
    switch (p) {
        case PredictorKind::MovingAverage: return "mean";
        case PredictorKind::NaiveAr: return "naive-ar";
        case PredictorKind::GeneralizedAr: return "gen-ar";
    }
    return "mean";
}

inline PredictorKind predictor_from_string(const std::string& s) {
    if (s == "mean") return PredictorKind::MovingAverage;
    if (s == "naive-ar") return PredictorKind::NaiveAr;
    if (s == "gen-ar") return PredictorKind::GeneralizedAr;
    throw LoadError("parameters.predictor", "unknown predictor '" + s + "'");
}

struct Parameters {
    double dt = 1.0;
    int history = 5;
    double confidence_z = 2.0;
    double grid_cell = 0.0; ///< 0 selects the default v_max * dt / 4
    double sensing_radius = std::numeric_limits<double>::infinity();
    PredictorKind predictor = PredictorKind::MovingAverage;
    int max_steps = 200;
    std::uint64_t seed = 1;
    double sigma_prior_v = 0.5; ///< belief prior until residuals accumulate
    double sigma_prior_d = 0.5;
    int zone_resolution = 360;
    int collision_substeps = 10;
    bool gen_ar_white_noise = false;

    friend bool operator==(const Parameters&, const Parameters&) = default;
};

struct RobotSpec {
    std::optional<ShapeSpec> shape; ///< empty for a point robot
    EuclidPoint start;
    EuclidPoint goal;
    double v_max = 1.0;

    friend bool operator==(const RobotSpec&, const RobotSpec&) = default;
};

struct Scenario {
    std::string name;
    EuclidPoint env_lo;
    EuclidPoint env_hi;
    std::vector<StaticObstacle> statics;
    std::vector<ObjectSpec> objects;
    RobotSpec robot;
    Parameters params;

    double grid_cell() const {
        return params.grid_cell > 0.0 ? params.grid_cell : robot.v_max * params.dt / 4.0;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// JSON conversion
// ---------------------------------------------------------------------------

namespace detail {

inline json point_to_json(EuclidPoint p) { return json::array({p.x, p.y}); }

inline EuclidPoint point_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw LoadError(field, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw LoadError(ctx + "." + key, "missing field");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw LoadError(ctx + "." + key, "wrong type");
    }
}

template <typename T>
T optional_or(const json& j, const std::string& key, T def, const std::string& ctx) {
    if (!j.contains(key) || j.at(key).is_null()) return def;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw LoadError(ctx + "." + key, "wrong type");
    }
}

} // namespace detail

inline json to_json(const ShapeSpec& s) {
    switch (s.kind) {
        case ShapeSpec::Kind::Circle:
            return {{"type", "circle"}, {"radius", s.radius}, {"segments", s.segments}};
        case ShapeSpec::Kind::Rectangle:
            return {{"type", "rectangle"}, {"width", s.width}, {"height", s.height}};
        case ShapeSpec::Kind::Polygon: {
            json verts = json::array();
            for (const auto& v : s.vertices) verts.push_back(detail::point_to_json(v));
            return {{"type", "polygon"}, {"vertices", verts}};
        }
    }
    throw std::logic_error("unreachable");
}

inline ShapeSpec shape_from_json(const json& j, const std::string& ctx) {
    ShapeSpec s;
    const auto type = detail::require<std::string>(j, "type", ctx);
    if (type == "circle") {
        s.kind = ShapeSpec::Kind::Circle;
        s.radius = detail::require<double>(j, "radius", ctx);
        s.segments = detail::optional_or<int>(j, "segments", 48, ctx);
        if (s.radius <= 0.0) throw LoadError(ctx + ".radius", "must be > 0");
        if (s.segments < 3) throw LoadError(ctx + ".segments", "must be >= 3");
    } else if (type == "rectangle") {
        s.kind = ShapeSpec::Kind::Rectangle;
        s.width = detail::require<double>(j, "width", ctx);
        s.height = detail::require<double>(j, "height", ctx);
        if (s.width <= 0.0 || s.height <= 0.0)
            throw LoadError(ctx + ".width/height", "must be > 0");
    } else if (type == "polygon") {
        s.kind = ShapeSpec::Kind::Polygon;
        if (!j.contains("vertices") || !j.at("vertices").is_array())
            throw LoadError(ctx + ".vertices", "missing vertex list");
        for (std::size_t i = 0; i < j.at("vertices").size(); ++i)
            s.vertices.push_back(detail::point_from_json(
                j.at("vertices")[i], ctx + ".vertices[" + std::to_string(i) + "]"));
    } else {
        throw LoadError(ctx + ".type", "unknown shape '" + type + "'");
    }
    try {
        (void)s.build();
    } catch (const std::invalid_argument& e) {
        throw LoadError(ctx, e.what());
    }
    return s;
}

inline json to_json(const MotionSpec& m) {
    switch (m.kind) {
        case MotionSpec::Kind::Waypoints: {
            json w = json::array();
            for (const auto& p : m.waypoints) w.push_back(detail::point_to_json(p));
            return {{"type", "waypoints"}, {"waypoints", w}, {"speed", m.speed},
                    {"loop", m.loop}};
        }
        case MotionSpec::Kind::Steps: {
            json steps = json::array();
            for (const auto& s : m.steps)
                steps.push_back({{"speed", s.speed}, {"direction", s.direction}});
            return {{"type", "steps"}, {"steps", steps}, {"hold_last", m.hold_last}};
        }
        case MotionSpec::Kind::Stochastic:
            return {{"type", "stochastic"},    {"base_speed", m.base_speed},
                    {"base_direction", m.base_direction}, {"sigma_v", m.sigma_v},
                    {"sigma_d", m.sigma_d}};
    }
    throw std::logic_error("unreachable");
}

inline MotionSpec motion_from_json(const json& j, const std::string& ctx) {
    MotionSpec m;
    const auto type = detail::require<std::string>(j, "type", ctx);
    if (type == "waypoints") {
        m.kind = MotionSpec::Kind::Waypoints;
        if (!j.contains("waypoints") || !j.at("waypoints").is_array() ||
            j.at("waypoints").empty())
            throw LoadError(ctx + ".waypoints", "need at least one waypoint");
        for (std::size_t i = 0; i < j.at("waypoints").size(); ++i)
            m.waypoints.push_back(detail::point_from_json(
                j.at("waypoints")[i], ctx + ".waypoints[" + std::to_string(i) + "]"));
        m.speed = detail::require<double>(j, "speed", ctx);
        if (m.speed < 0.0) throw LoadError(ctx + ".speed", "must be >= 0");
        m.loop = detail::optional_or<bool>(j, "loop", false, ctx);
    } else if (type == "steps") {
        m.kind = MotionSpec::Kind::Steps;
        if (!j.contains("steps") || !j.at("steps").is_array())
            throw LoadError(ctx + ".steps", "missing step list");
        for (std::size_t i = 0; i < j.at("steps").size(); ++i) {
            const auto& js = j.at("steps")[i];
            const std::string sctx = ctx + ".steps[" + std::to_string(i) + "]";
            MotionSpec::Step s;
            s.speed = detail::require<double>(js, "speed", sctx);
            s.direction = detail::require<double>(js, "direction", sctx);
            if (s.speed < 0.0) throw LoadError(sctx + ".speed", "must be >= 0");
            m.steps.push_back(s);
        }
        m.hold_last = detail::optional_or<bool>(j, "hold_last", true, ctx);
    } else if (type == "stochastic") {
        m.kind = MotionSpec::Kind::Stochastic;
        m.base_speed = detail::require<double>(j, "base_speed", ctx);
        m.base_direction = detail::require<double>(j, "base_direction", ctx);
        m.sigma_v = detail::require<double>(j, "sigma_v", ctx);
        m.sigma_d = detail::require<double>(j, "sigma_d", ctx);
        if (m.base_speed < 0.0) throw LoadError(ctx + ".base_speed", "must be >= 0");
        if (m.sigma_v <= 0.0) throw LoadError(ctx + ".sigma_v", "must be > 0");
        if (m.sigma_d <= 0.0) throw LoadError(ctx + ".sigma_d", "must be > 0");
    } else {
        throw LoadError(ctx + ".type", "unknown motion '" + type + "'");
    }
    return m;
}

inline json to_json(const Parameters& p) {
    json j{{"dt", p.dt},
           {"history", p.history},
           {"confidence_z", p.confidence_z},
           {"grid_cell", p.grid_cell},
           {"predictor", to_string(p.predictor)},
           {"max_steps", p.max_steps},
           {"seed", p.seed},
           {"sigma_prior_v", p.sigma_prior_v},
           {"sigma_prior_d", p.sigma_prior_d},
           {"zone_resolution", p.zone_resolution},
           {"collision_substeps", p.collision_substeps},
           {"gen_ar_white_noise", p.gen_ar_white_noise}};
    if (std::isfinite(p.sensing_radius))
        j["sensing_radius"] = p.sensing_radius;
    else
        j["sensing_radius"] = nullptr;
    return j;
}

inline Parameters parameters_from_json(const json& j) {
    Parameters p;
    const std::string ctx = "parameters";
    p.dt = detail::optional_or<double>(j, "dt", 1.0, ctx);
    p.history = detail::optional_or<int>(j, "history", 5, ctx);
    p.confidence_z = detail::optional_or<double>(j, "confidence_z", 2.0, ctx);
    p.grid_cell = detail::optional_or<double>(j, "grid_cell", 0.0, ctx);
    p.sensing_radius = detail::optional_or<double>(
        j, "sensing_radius", std::numeric_limits<double>::infinity(), ctx);
    p.predictor = predictor_from_string(
        detail::optional_or<std::string>(j, "predictor", "mean", ctx));
    p.max_steps = detail::optional_or<int>(j, "max_steps", 200, ctx);
    p.seed = detail::optional_or<std::uint64_t>(j, "seed", 1, ctx);
    p.sigma_prior_v = detail::optional_or<double>(j, "sigma_prior_v", 0.5, ctx);
    p.sigma_prior_d = detail::optional_or<double>(j, "sigma_prior_d", 0.5, ctx);
    p.zone_resolution = detail::optional_or<int>(j, "zone_resolution", 360, ctx);
    p.collision_substeps = detail::optional_or<int>(j, "collision_substeps", 10, ctx);
    p.gen_ar_white_noise = detail::optional_or<bool>(j, "gen_ar_white_noise", false, ctx);
    if (p.dt <= 0.0) throw LoadError(ctx + ".dt", "must be > 0");
    if (p.history < 1) throw LoadError(ctx + ".history", "must be >= 1");
    if (p.confidence_z <= 0.0) throw LoadError(ctx + ".confidence_z", "must be > 0");
    if (p.max_steps < 1) throw LoadError(ctx + ".max_steps", "must be >= 1");
    if (p.zone_resolution < 16) throw LoadError(ctx + ".zone_resolution", "must be >= 16");
    if (p.collision_substeps < 1) throw LoadError(ctx + ".collision_substeps", "must be >= 1");
    if (p.sensing_radius <= 0.0) throw LoadError(ctx + ".sensing_radius", "must be > 0");
    return p;
}

inline json to_json(const Scenario& sc) {
    json statics = json::array();
    for (const auto& s : sc.statics)
        statics.push_back(
            {{"shape", to_json(s.shape)}, {"position", detail::point_to_json(s.position)}});
    json objects = json::array();
    for (const auto& o : sc.objects) {
        objects.push_back({{"id", o.id},
                           {"shape", to_json(o.shape)},
                           {"initial",
                            {{"position", detail::point_to_json(o.initial_position)},
                             {"direction", o.initial_direction},
                             {"speed", o.initial_speed}}},
                           {"motion", to_json(o.motion)}});
    }
    json robot{{"start", detail::point_to_json(sc.robot.start)},
               {"goal", detail::point_to_json(sc.robot.goal)},
               {"v_max", sc.robot.v_max}};
    if (sc.robot.shape)
        robot["shape"] = to_json(*sc.robot.shape);
    else
        robot["shape"] = nullptr;
    return json{{"name", sc.name},
                {"environment",
                 {{"min", detail::point_to_json(sc.env_lo)},
                  {"max", detail::point_to_json(sc.env_hi)}}},
                {"static_obstacles", statics},
                {"objects", objects},
                {"robot", robot},
                {"parameters", to_json(sc.params)}};
}

/// Parse and fully validate a scenario document.
inline Scenario load_scenario(const json& j) {
    Scenario sc;
    sc.name = detail::optional_or<std::string>(j, "name", "unnamed", "scenario");
    if (!j.contains("environment")) throw LoadError("environment", "missing field");
    sc.env_lo = detail::point_from_json(detail::require<json>(j.at("environment"), "min",
                                                              "environment"),
                                        "environment.min");
    sc.env_hi = detail::point_from_json(detail::require<json>(j.at("environment"), "max",
                                                              "environment"),
                                        "environment.max");
    if (!(sc.env_hi.x > sc.env_lo.x && sc.env_hi.y > sc.env_lo.y))
        throw LoadError("environment", "max must exceed min");

    if (j.contains("static_obstacles")) {
        const auto& arr = j.at("static_obstacles");
        if (!arr.is_array()) throw LoadError("static_obstacles", "expected a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ctx = "static_obstacles[" + std::to_string(i) + "]";
            StaticObstacle s;
            s.shape = shape_from_json(detail::require<json>(arr[i], "shape", ctx), ctx + ".shape");
            s.position =
                detail::point_from_json(detail::require<json>(arr[i], "position", ctx),
                                        ctx + ".position");
            sc.statics.push_back(std::move(s));
        }
    }

    if (j.contains("objects")) {
        const auto& arr = j.at("objects");
        if (!arr.is_array()) throw LoadError("objects", "expected a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ctx = "objects[" + std::to_string(i) + "]";
            ObjectSpec o;
            o.id = detail::require<std::string>(arr[i], "id", ctx);
            for (const auto& other : sc.objects)
                if (other.id == o.id) throw LoadError(ctx + ".id", "duplicate id '" + o.id + "'");
            o.shape = shape_from_json(detail::require<json>(arr[i], "shape", ctx), ctx + ".shape");
            const auto init = detail::require<json>(arr[i], "initial", ctx);
            o.initial_position = detail::point_from_json(
                detail::require<json>(init, "position", ctx + ".initial"),
                ctx + ".initial.position");
            o.initial_direction =
                detail::optional_or<double>(init, "direction", 0.0, ctx + ".initial");
            o.initial_speed = detail::optional_or<double>(init, "speed", 0.0, ctx + ".initial");
            o.motion = motion_from_json(detail::require<json>(arr[i], "motion", ctx),
                                        ctx + ".motion");
            sc.objects.push_back(std::move(o));
        }
    }

    if (!j.contains("robot")) throw LoadError("robot", "missing field");
    const auto& jr = j.at("robot");
    if (jr.contains("shape") && !jr.at("shape").is_null())
        sc.robot.shape = shape_from_json(jr.at("shape"), "robot.shape");
    sc.robot.start = detail::point_from_json(detail::require<json>(jr, "start", "robot"),
                                             "robot.start");
    sc.robot.goal =
        detail::point_from_json(detail::require<json>(jr, "goal", "robot"), "robot.goal");
    sc.robot.v_max = detail::require<double>(jr, "v_max", "robot");
    if (sc.robot.v_max <= 0.0) throw LoadError("robot.v_max", "must be > 0");

    sc.params = j.contains("parameters") ? parameters_from_json(j.at("parameters"))
                                         : Parameters{};

    // cross-field invariants
    auto inside_env = [&sc](EuclidPoint p) {
        return p.x >= sc.env_lo.x && p.x <= sc.env_hi.x && p.y >= sc.env_lo.y &&
               p.y <= sc.env_hi.y;
    };
    if (!inside_env(sc.robot.start)) throw LoadError("robot.start", "outside environment");
    if (!inside_env(sc.robot.goal)) throw LoadError("robot.goal", "outside environment");
    for (std::size_t i = 0; i < sc.statics.size(); ++i) {
        const auto ring = sc.statics[i].shape.build().placed_at(sc.statics[i].position);
        const auto region = geometry::Region::from_ring(ring);
        if (geometry::point_in(region, sc.robot.start))
            throw LoadError("robot.start",
                            "inside static_obstacles[" + std::to_string(i) + "]");
        if (geometry::point_in(region, sc.robot.goal))
            throw LoadError("robot.goal", "inside static_obstacles[" + std::to_string(i) + "]");
    }
    return sc;
}

inline Scenario load_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError("document", std::string("malformed JSON: ") + e.what());
    }
    return load_scenario(j);
}

} // namespace safepath::sim
