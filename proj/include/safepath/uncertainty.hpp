#pragma once
/**
 * @file  uncertainty.hpp
 * @brief Truncated-normal error densities for obstacle speed and direction,
 *        the Gaussian error function, quantile-based error bounds, and a
 *        reproducible random stream for simulation.
 *
 * Speed errors live on [-v, inf) and direction errors on [-pi, pi), both
 * zero-mean truncated normals; an object at rest gets the uniform direction
 * density on [0, 2pi). Densities are normalized so they integrate to 1
 * (the erf argument carries the 1/sqrt(2) that a correctly normalized
 * truncated normal requires). A sigma of exactly 0 denotes a point mass
 * (deterministic object).
 */

#include "safepath/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace safepath::uncertainty {

/// Gaussian error function, odd-symmetric by construction.
inline double erf(double x) { return x < 0.0 ? -std::erf(-x) : std::erf(x); }

/// Standard normal density.
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * geometry::kPi);
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Inverse standard normal CDF (Acklam's rational approximation polished
/// with one Halley step; accurate to ~1e-15 over (0, 1)).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("normal_quantile: p outside [0, 1]");
    }
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * geometry::kPi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

/// Error model for an object's speed: truncated normal on [-v, inf),
/// mu = 0. sigma == 0 denotes a point mass.
struct SpeedErrorModel {
    double expected_speed = 0.0; ///< v, map units per step; >= 0
    double sigma = 0.0;          ///< sigma_v; 0 for deterministic objects

    bool point_mass() const { return sigma == 0.0; }
};

/// Error model for an object's direction: truncated normal on [-pi, pi)
/// when moving, uniform on [0, 2pi) at rest. sigma == 0 denotes a point mass.
struct DirectionErrorModel {
    double expected_direction = 0.0; ///< radians in [0, 2pi)
    double sigma = 0.0;              ///< sigma_d; 0 for deterministic objects
    bool moving = true;

    bool point_mass() const { return sigma == 0.0 && moving; }
};

/// Density of the speed error at x; zero below -v.
inline double speed_error_pdf(const SpeedErrorModel& m, double x) {
    if (m.sigma == 0.0)
        return x == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (x < -m.expected_speed) return 0.0;
    const double s = m.sigma;
    const double tail = 0.5 * std::erfc(-m.expected_speed / (s * std::sqrt(2.0)));
    return normal_pdf(x / s) / (s * tail);
}

/// Density of the direction error at x. Moving objects use the truncated
/// normal on [-pi, pi); objects at rest are uniform over [0, 2pi).
inline double direction_error_pdf(const DirectionErrorModel& m, double x) {
    if (!m.moving) {
        return (x >= 0.0 && x < geometry::kTwoPi) ? 1.0 / geometry::kTwoPi : 0.0;
    }
    if (m.sigma == 0.0)
        return x == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (x < -geometry::kPi || x >= geometry::kPi) return 0.0;
    const double s = m.sigma;
    const double mass = erf(geometry::kPi / (s * std::sqrt(2.0)));
    return normal_pdf(x / s) / (s * mass);
}

/// Quantile-based error bounds used by the safe-zone construction.
struct ErrorBounds {
    double delta_v = 0.0;     ///< speed error bound, >= 0
    double delta_theta = 0.0; ///< direction error bound in [0, pi]
};

/**
 * @brief Error bounds at a confidence multiple z.
 *
 * delta_v = z * sigma_v; delta_theta = min(z * sigma_d, pi) for moving
 * objects and pi for objects at rest (any direction is possible). Point
 * masses yield (0, 0).
 */
inline ErrorBounds error_bounds(const SpeedErrorModel& mv, const DirectionErrorModel& md,
                                double confidence_z) {
    if (confidence_z <= 0.0) throw std::invalid_argument("error_bounds: z must be > 0");
    ErrorBounds out;
    out.delta_v = confidence_z * mv.sigma;
    if (md.sigma == 0.0) {
        out.delta_theta = 0.0;
    } else if (!md.moving) {
        out.delta_theta = geometry::kPi;
    } else {
        out.delta_theta = std::min(confidence_z * md.sigma, geometry::kPi);
    }
    return out;
}

/**
 * @brief Seeded random stream; identical seeds give identical sequences.
 *
 * Single-owner: concurrent runs derive independent streams with derive().
 */
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform draw in [0, 1) built from the raw 64-bit output, so the
    /// mapping is identical on every platform.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal draw by inverse transform (one uniform per draw).
    double normal() {
        double u = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        return normal_quantile(u);
    }

    /// Independent substream for a derived purpose (run index, module tag).
    RngStream derive(std::uint64_t index) const {
        std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return RngStream(z ^ (z >> 31));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// One sampled error pair for a simulation step.
struct SampledErrors {
    double delta_v = 0.0;     ///< speed error, >= -v
    double delta_theta = 0.0; ///< direction error in [-pi, pi); for objects
                              ///< at rest this is the absolute direction
                              ///< drawn uniformly from [0, 2pi)
};

/// Inverse-transform draws from the two error densities.
inline SampledErrors sample_errors(const SpeedErrorModel& mv, const DirectionErrorModel& md,
                                   RngStream& rng) {
    SampledErrors out;
    if (mv.sigma > 0.0) {
        const double lo = normal_cdf(-mv.expected_speed / mv.sigma);
        const double p = lo + (1.0 - lo) * rng.uniform();
        out.delta_v = mv.sigma * normal_quantile(std::min(p, 1.0 - 0x1.0p-53));
        out.delta_v = std::max(out.delta_v, -mv.expected_speed);
    }
    if (!md.moving) {
        out.delta_theta = rng.uniform(0.0, geometry::kTwoPi);
    } else if (md.sigma > 0.0) {
        const double hi = normal_cdf(geometry::kPi / md.sigma);
        const double lo = 1.0 - hi;
        const double p = lo + (hi - lo) * rng.uniform();
        out.delta_theta = md.sigma * normal_quantile(p);
        out.delta_theta = std::clamp(out.delta_theta, -geometry::kPi,
                                     std::nextafter(geometry::kPi, 0.0));
    }
    return out;
}

} // namespace safepath::uncertainty
