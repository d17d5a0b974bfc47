#pragma once
/**
 * @file  prediction.hpp
 * @brief Object state history, next-position kinematics, the three
 *        velocity/direction predictors (moving average, naive AR,
 *        generalized AR) and the per-step state update.
 */

#include "safepath/geometry.hpp"
#include "safepath/uncertainty.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace safepath::prediction {

using geometry::PolarPoint;

/// Full kinematic state of one object at one time step.
struct ObjectState {
    PolarPoint pose;                ///< centroid position (orien, dist)
    double expected_direction = 0.0; ///< d_v, radians in [0, 2pi)
    double expected_speed = 0.0;     ///< v, map units per step, >= 0
    uncertainty::SpeedErrorModel speed_model;
    uncertainty::DirectionErrorModel direction_model;
    bool deterministic = false;
};

/// Pose after one step of expected motion: the polar form of the Euclidean
/// vector sum of the current position and the velocity vector.
inline PolarPoint next_position(const ObjectState& s) {
    const geometry::EuclidPoint pos = geometry::polar_to_euclid(s.pose);
    const geometry::EuclidPoint vel = s.expected_speed * geometry::unit(s.expected_direction);
    return geometry::euclid_to_polar(pos + vel);
}

/// Circular mean of angles with optional weights; falls back to the last
/// angle when the resultant vector vanishes.
inline double circular_mean(const std::vector<double>& angles,
                            const std::vector<double>& weights = {}) {
    if (angles.empty()) throw std::invalid_argument("circular_mean: empty input");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        sx += w * std::cos(angles[i]);
        sy += w * std::sin(angles[i]);
    }
    if (std::hypot(sx, sy) < 1e-12) return geometry::normalize_angle(angles.back());
    return geometry::normalize_angle(std::atan2(sy, sx));
}

/// Forecast for a future step.
struct Prediction {
    int horizon = 1; ///< steps ahead, >= 1
    double expected_speed = 0.0;
    double expected_direction = 0.0;
    PolarPoint pose; ///< pose after chaining the predicted motion
};

/// Normalized naive-AR weights, most recent first: (1, 1/2, ..., 1/2^(H-1)) / sum.
inline std::vector<double> naive_ar_weights(std::size_t h) {
    if (h == 0) throw std::invalid_argument("naive_ar_weights: H must be >= 1");
    std::vector<double> w(h);
    double total = 0.0;
    double val = 1.0;
    for (std::size_t i = 0; i < h; ++i, val *= 0.5) {
        w[i] = val;
        total += val;
    }
    for (auto& x : w) x /= total;
    return w;
}

/// Random generalized-AR weights: a uniform simplex sample sorted ascending
/// oldest-to-recent. Strictly positive, sums to 1.
inline std::vector<double> generalized_ar_weights(std::size_t h, uncertainty::RngStream& rng) {
    if (h == 0) throw std::invalid_argument("generalized_ar_weights: H must be >= 1");
    std::vector<double> w(h);
    double total = 0.0;
    for (auto& x : w) {
        double u = rng.uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        x = -std::log(u);
        total += x;
    }
    for (auto& x : w) x /= total;
    std::sort(w.begin(), w.end());
    return w;
}

/// Options for the generalized auto-regressive predictor.
struct GeneralizedArOptions {
    bool white_noise = false;
    double noise_scale = 0.01;
};

/**
 * @brief Rolling window of the last H states of one object, plus the
 *        bookkeeping the simulator needs: one-step prediction residuals for
 *        sigma estimation and duplicate-observation warnings.
 */
class StateHistory {
  public:
    explicit StateHistory(std::size_t window = 5, std::size_t residual_window = 5)
        : window_(std::max<std::size_t>(1, window)),
          residual_window_(std::max<std::size_t>(1, residual_window)) {}

    std::size_t window() const { return window_; }
    bool empty() const { return states_.empty(); }
    std::size_t size() const { return states_.size(); }

    const ObjectState& latest() const {
        if (states_.empty()) throw std::logic_error("state history is empty");
        return states_.back().state;
    }
    long latest_step() const {
        if (states_.empty()) throw std::logic_error("state history is empty");
        return states_.back().step;
    }

    /// States oldest-to-newest.
    std::vector<ObjectState> states() const {
        std::vector<ObjectState> out;
        out.reserve(states_.size());
        for (const auto& e : states_) out.push_back(e.state);
        return out;
    }

    /// Record an observation for a step. Observations supersede predicted
    /// entries; a duplicate observation for the same step wins and leaves a
    /// warning record.
    void observe(long step, const ObjectState& s) {
        if (!states_.empty() && states_.back().step == step) {
            if (states_.back().observed)
                warnings_.push_back("duplicate observation for step " + std::to_string(step));
            states_.back() = {step, s, true};
            return;
        }
        states_.push_back({step, s, true});
        while (states_.size() > window_) states_.pop_front();
    }

    /// Record the one-step-ahead prediction made for `step` so the residual
    /// can be formed when the observation arrives.
    void note_prediction(long step, double speed, double direction) {
        pending_ = Pending{step, speed, direction};
    }

    /// Fold the residual (observed - predicted) for this step into the sigma
    /// estimation buffers, if a matching prediction is pending.
    void absorb_residual(long step, double observed_speed, double observed_direction) {
        if (!pending_ || pending_->step != step) return;
        push_residual(speed_residuals_, observed_speed - pending_->speed);
        push_residual(direction_residuals_,
                      geometry::wrap_signed(observed_direction - pending_->direction));
        pending_.reset();
    }

    std::size_t residual_count() const { return speed_residuals_.size(); }

    /// Sample standard deviation of the speed residuals, floored at 1e-3.
    /// Falls back to `prior` until at least three residuals exist.
    double sigma_v(double prior) const { return sigma_from(speed_residuals_, prior); }
    double sigma_d(double prior) const { return sigma_from(direction_residuals_, prior); }

    const std::vector<std::string>& warnings() const { return warnings_; }

  private:
    struct Entry {
        long step = 0;
        ObjectState state;
        bool observed = false;
    };
    struct Pending {
        long step = 0;
        double speed = 0.0;
        double direction = 0.0;
    };

    void push_residual(std::deque<double>& buf, double r) {
        buf.push_back(r);
        while (buf.size() > residual_window_) buf.pop_front();
    }

    double sigma_from(const std::deque<double>& buf, double prior) const {
        constexpr double kFloor = 1e-3;
        if (buf.size() < 3) return std::max(prior, kFloor);
        const double mean = std::accumulate(buf.begin(), buf.end(), 0.0) /
                            static_cast<double>(buf.size());
        double ss = 0.0;
        for (double r : buf) ss += (r - mean) * (r - mean);
        return std::max(std::sqrt(ss / static_cast<double>(buf.size() - 1)), kFloor);
    }

    std::size_t window_;
    std::size_t residual_window_;
    std::deque<Entry> states_;
    std::deque<double> speed_residuals_;
    std::deque<double> direction_residuals_;
    std::optional<Pending> pending_;
    std::vector<std::string> warnings_;
};

namespace detail {

/// Chain the predicted motion from the latest pose to the horizon step.
inline PolarPoint chain_pose(const StateHistory& h, double speed, double direction, int k) {
    ObjectState s = h.latest();
    s.expected_speed = speed;
    s.expected_direction = direction;
    PolarPoint pose = s.pose;
    for (int i = 0; i < k; ++i) {
        s.pose = pose;
        pose = next_position(s);
    }
    return pose;
}

struct Window {
    std::vector<double> speeds;
    std::vector<double> directions;
};

inline Window window_of(const StateHistory& h) {
    Window w;
    for (const auto& s : h.states()) {
        w.speeds.push_back(s.expected_speed);
        w.directions.push_back(s.expected_direction);
    }
    return w;
}

inline void slide(Window& w, std::size_t cap, double speed, double direction) {
    w.speeds.push_back(speed);
    w.directions.push_back(direction);
    if (w.speeds.size() > cap) {
        w.speeds.erase(w.speeds.begin());
        w.directions.erase(w.directions.begin());
    }
}

} // namespace detail

/// Moving-average forecast k steps ahead. Directions use the circular mean;
/// multi-step forecasts feed earlier predictions back into the window.
inline Prediction predict_moving_average(const StateHistory& h, int k = 1) {
    if (h.empty()) throw std::invalid_argument("predict: empty history");
    if (k < 1) throw std::invalid_argument("predict: horizon must be >= 1");
    auto w = detail::window_of(h);
    double speed = 0.0, direction = 0.0;
    for (int j = 0; j < k; ++j) {
        speed = std::accumulate(w.speeds.begin(), w.speeds.end(), 0.0) /
                static_cast<double>(w.speeds.size());
        direction = circular_mean(w.directions);
        detail::slide(w, h.window(), speed, direction);
    }
    return {k, speed, direction, detail::chain_pose(h, speed, direction, k)};
}

/// Naive auto-regressive forecast with geometric weights, most recent state
/// weighted highest. Short histories use the truncated, renormalized weights.
inline Prediction predict_naive_ar(const StateHistory& h, int k = 1) {
    if (h.empty()) throw std::invalid_argument("predict: empty history");
    if (k < 1) throw std::invalid_argument("predict: horizon must be >= 1");
    auto w = detail::window_of(h);
    double speed = 0.0, direction = 0.0;
    for (int j = 0; j < k; ++j) {
        const std::size_t n = w.speeds.size();
        const auto weights = naive_ar_weights(n); // most recent first
        std::vector<double> by_age(n);            // align oldest-to-newest
        for (std::size_t i = 0; i < n; ++i) by_age[i] = weights[n - 1 - i];
        speed = 0.0;
        for (std::size_t i = 0; i < n; ++i) speed += by_age[i] * w.speeds[i];
        direction = circular_mean(w.directions, by_age);
        detail::slide(w, h.window(), speed, direction);
    }
    return {k, speed, direction, detail::chain_pose(h, speed, direction, k)};
}

/// Generalized auto-regressive forecast: two fresh random nondecreasing
/// weight vectors per sub-step, one for speed and one for direction.
inline Prediction predict_generalized_ar(const StateHistory& h, int k,
                                         uncertainty::RngStream& rng,
                                         const GeneralizedArOptions& opts = {}) {
    if (h.empty()) throw std::invalid_argument("predict: empty history");
    if (k < 1) throw std::invalid_argument("predict: horizon must be >= 1");
    auto w = detail::window_of(h);
    double speed = 0.0, direction = 0.0;
    for (int j = 0; j < k; ++j) {
        const std::size_t n = w.speeds.size();
        const auto w1 = generalized_ar_weights(n, rng); // ascending oldest-to-recent
        const auto w2 = generalized_ar_weights(n, rng);
        speed = 0.0;
        for (std::size_t i = 0; i < n; ++i) speed += w1[i] * w.speeds[i];
        direction = circular_mean(w.directions, w2);
        if (opts.white_noise) {
            speed = std::max(0.0, speed + opts.noise_scale * rng.normal());
            direction = geometry::normalize_angle(direction + opts.noise_scale * rng.normal());
        }
        detail::slide(w, h.window(), speed, direction);
    }
    return {k, speed, direction, detail::chain_pose(h, speed, direction, k)};
}

/// Observation of one object at the current step.
struct Observation {
    long step = 0;
    ObjectState state;
};

/**
 * @brief Fold current-step observations into a history: observed values
 *        supersede predictions for the step, and residuals against the
 *        pending one-step predictions feed the sigma estimators.
 */
inline void update_states(StateHistory& h, const std::vector<Observation>& observed) {
    for (const auto& obs : observed) {
        h.absorb_residual(obs.step, obs.state.expected_speed, obs.state.expected_direction);
        h.observe(obs.step, obs.state);
    }
}

} // namespace safepath::prediction
