#pragma once

#include <algorithm>
#include <cmath>

#include "cuav/types.hpp"

namespace cuav {

/// Probability of a line-of-sight component at elevation angle `theta`
/// (radians). The logistic curve itself works in degrees, so the
/// conversion happens here and nowhere else.
inline double los_probability(const EnvModel& env, double theta) {
    const double theta_deg = rad2deg(theta);
    return 1.0 / (1.0 + env.a * std::exp(-env.b * (theta_deg - env.a)));
}

namespace detail {

/// Receiver-side geometry derived from a warden-centred placement.
struct BobGeom {
    double range;      ///< UAV-receiver distance d_b (m)
    double range_sq;   ///< d_b^2
    double elevation;  ///< elevation angle at the receiver, in [0, pi/2]
};

inline BobGeom bob_geom(const PolarPlacement& p, double L) {
    const double db_sq =
        L * L + p.d_w * p.d_w - 2.0 * p.d_w * L * std::cos(p.theta_w);
    if (!(db_sq > 0.0))
        throw degenerate_geometry("UAV placement coincides with the receiver");
    const double db = std::sqrt(db_sq);
    // The ratio can exceed 1 by rounding when the UAV is directly
    // above the receiver; clamp before asin.
    const double ratio = std::min(1.0, p.d_w * std::sin(p.theta_w) / db);
    return BobGeom{db, db_sq, std::asin(ratio)};
}

} // namespace detail

/// UAV-receiver distance d_b = sqrt(L^2 + d_w^2 - 2 d_w L cos(theta_w)).
inline double bob_range(const PolarPlacement& p, double L) {
    return detail::bob_geom(p, L).range;
}

/// Elevation angle of the UAV seen from the receiver, in [0, pi/2].
inline double bob_elevation(const PolarPlacement& p, double L) {
    return detail::bob_geom(p, L).elevation;
}

/// LoS-probability-weighted link gain to the receiver,
/// f(d_w, theta_w) = d_b^{xi_los} * p_b.
inline double bob_link_gain(const EnvModel& env, const PolarPlacement& p, double L) {
    const auto g = detail::bob_geom(p, L);
    return std::pow(g.range, env.xi_los) * los_probability(env, g.elevation);
}

/// Effective SNR at the receiver for transmit power P (W).
inline double effective_snr(const EnvModel& env, const RadioParams& radio,
                            const PolarPlacement& p, double L, double P) {
    return P * bob_link_gain(env, p, L) / radio.sigma2_b;
}

/// Effective received signal power at the warden,
/// P * (d_w^{xi_los} p_w + d_w^{xi_nlos}). Strictly decreasing in d_w and
/// strictly increasing in theta_w.
inline double willie_received_power(const EnvModel& env, const PolarPlacement& p,
                                    double P) {
    const double p_w = los_probability(env, p.theta_w);
    return P * (std::pow(p.d_w, env.xi_los) * p_w + std::pow(p.d_w, env.xi_nlos));
}

namespace detail {

/// Link gain to the warden per unit transmit power.
inline double willie_unit_gain(const EnvModel& env, const PolarPlacement& p) {
    const double p_w = los_probability(env, p.theta_w);
    return std::pow(p.d_w, env.xi_los) * p_w + std::pow(p.d_w, env.xi_nlos);
}

/// Sign of (L - d_w cos(theta_w)), the factor that flips as the UAV
/// crosses the point directly above the receiver. At the crossing itself
/// the one-sided value from inside the relevant search interval is used:
/// +1 when approached in range (d_w below L/cos) and -1 when approached
/// in angle with d_w > L.
inline double overhead_sign_for_range(double lmdc) {
    return lmdc >= 0.0 ? 1.0 : -1.0;
}

inline double overhead_sign_for_angle(double lmdc, double d_w, double L) {
    if (lmdc > 0.0) return 1.0;
    if (lmdc < 0.0) return -1.0;
    return d_w > L ? -1.0 : 1.0;
}

} // namespace detail

/// Range residual whose root locates the gain-maximising d_w for a fixed
/// theta_w. Valid on [L cos(theta_w), L / cos(theta_w)], where the
/// overhead sign factor equals +1 and drops out.
inline double range_stationarity_residual(const EnvModel& env, double L,
                                          double theta_w, double d_w) {
    const auto g = detail::bob_geom({d_w, theta_w}, L);
    const double p_b = los_probability(env, g.elevation);
    return env.xi_los * (d_w - L * std::cos(theta_w)) +
           (180.0 * env.b * L * std::sin(theta_w) / kPi) * (1.0 - p_b);
}

/// Angle residual whose root locates the gain-maximising theta_w for a
/// fixed d_w. The ratio G(theta)/|L - d cos(theta)| reduces algebraically
/// to (L cos(theta) - d) * sign(L - d cos(theta)), which stays finite at
/// the overhead point.
inline double angle_stationarity_residual(const EnvModel& env, double L,
                                          double d_w, double theta_w) {
    const double c = std::cos(theta_w);
    const double s = std::sin(theta_w);
    const auto g = detail::bob_geom({d_w, theta_w}, L);
    const double p_b = los_probability(env, g.elevation);
    const double lmdc = L - d_w * c;
    const double sign = detail::overhead_sign_for_angle(lmdc, d_w, L);
    return env.xi_los * L * s +
           (180.0 * env.b / kPi) * (L * c - d_w) * sign * (1.0 - p_b);
}

/// Analytic partial derivative of bob_link_gain with respect to d_w:
/// p_b * d_b^{xi_los - 2} * fbar, with fbar the full factored form that
/// carries the overhead sign factor.
inline double dgain_drange(const EnvModel& env, const PolarPlacement& p, double L) {
    const auto g = detail::bob_geom(p, L);
    const double p_b = los_probability(env, g.elevation);
    const double c = std::cos(p.theta_w);
    const double s = std::sin(p.theta_w);
    const double lmdc = L - p.d_w * c;
    const double sign = detail::overhead_sign_for_range(lmdc);
    const double fbar = env.xi_los * (p.d_w - L * c) +
                        (180.0 * env.b / kPi) * s * L * sign * (1.0 - p_b);
    return p_b * std::pow(g.range_sq, env.xi_los / 2.0 - 1.0) * fbar;
}

/// Analytic partial derivative of bob_link_gain with respect to theta_w:
/// p_b * d_w * d_b^{xi_los - 2} * gbar.
inline double dgain_dangle(const EnvModel& env, const PolarPlacement& p, double L) {
    const auto g = detail::bob_geom(p, L);
    const double p_b = los_probability(env, g.elevation);
    const double gbar = angle_stationarity_residual(env, L, p.d_w, p.theta_w);
    return p_b * p.d_w * std::pow(g.range_sq, env.xi_los / 2.0 - 1.0) * gbar;
}

} // namespace cuav
