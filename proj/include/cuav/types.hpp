#pragma once

#include <stdexcept>
#include <string>

#include "cuav/units.hpp"

namespace cuav {

/// Thrown when the UAV coincides with the receiver, where the link gain
/// diverges and the geometry below is meaningless.
class degenerate_geometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown by validate() overloads; the message names the offending field.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Air-to-ground channel environment: logistic line-of-sight probability
/// curve (scale `a`, rate `b` per degree) and the two path-gain exponents.
struct EnvModel {
    double a;       ///< S-curve scale, > 0
    double b;       ///< S-curve rate per degree of elevation, > 0
    double xi_los;  ///< LoS path-gain exponent, < 0
    double xi_nlos; ///< NLoS path-gain exponent, <= xi_los
};

/// UAV location in warden-centred polar coordinates: range d_w (m) and
/// elevation angle theta_w (rad) seen from the warden.
struct PolarPlacement {
    double d_w;
    double theta_w;
};

/// Feasible-box constraints: receiver-warden ground distance L and the
/// box [d_min, d_max] x [theta_min, pi/2]. Vertical mode reuses d_min and
/// d_max as height bounds with theta_min = pi/2.
struct GeometryConstraints {
    double L;
    double d_min;
    double d_max;
    double theta_min;
};

/// Radio-side parameters. Powers are linear watts here; the configuration
/// layer converts from dBm.
struct RadioParams {
    double sigma2_b;  ///< receiver noise power (W)
    double sigma2_w;  ///< warden noise power (W)
    long n;           ///< blocklength (symbols)
    double p_max;     ///< maximum transmit power (W)
    double epsilon;   ///< covertness parameter, in (0,1)
};

/// Covertness budget expressed as a KL-divergence cap (nats).
struct CovertBudget {
    double d01_cap;

    static CovertBudget from_epsilon(double epsilon) {
        return CovertBudget{2.0 * epsilon * epsilon};
    }
};

inline void validate(const EnvModel& env) {
    if (!(env.a > 0.0)) throw invalid_parameter("env.a must be > 0");
    if (!(env.b > 0.0)) throw invalid_parameter("env.b must be > 0");
    if (!(env.xi_los < 0.0)) throw invalid_parameter("env.xi_los must be < 0");
    if (!(env.xi_nlos <= env.xi_los))
        throw invalid_parameter("env.xi_nlos must be <= env.xi_los");
}

inline void validate(const PolarPlacement& p) {
    if (!(p.d_w > 0.0)) throw invalid_parameter("placement.d_w must be > 0");
    if (!(p.theta_w >= 0.0 && p.theta_w <= kPi / 2.0))
        throw invalid_parameter("placement.theta_w must lie in [0, pi/2]");
}

inline void validate(const GeometryConstraints& g) {
    if (!(g.L > 0.0)) throw invalid_parameter("geometry.L must be > 0");
    if (!(g.d_min > 0.0)) throw invalid_parameter("geometry.d_min must be > 0");
    // A zero-width box (d_min == d_max) is tolerated here so the oracle
    // can scan degenerate boxes; the configuration layer is stricter.
    if (!(g.d_min <= g.d_max))
        throw invalid_parameter("geometry.d_min must be <= geometry.d_max");
    if (!(g.theta_min >= 0.0 && g.theta_min <= kPi / 2.0))
        throw invalid_parameter("geometry.theta_min must lie in [0, pi/2]");
}

inline void validate(const RadioParams& r) {
    if (!(r.sigma2_b > 0.0)) throw invalid_parameter("radio.sigma2_b must be > 0");
    if (!(r.sigma2_w > 0.0)) throw invalid_parameter("radio.sigma2_w must be > 0");
    if (!(r.n >= 1)) throw invalid_parameter("radio.n must be >= 1");
    if (!(r.p_max > 0.0)) throw invalid_parameter("radio.p_max must be > 0");
    if (!(r.epsilon > 0.0 && r.epsilon < 1.0))
        throw invalid_parameter("radio.epsilon must lie in (0, 1)");
}

inline void validate(const CovertBudget& b) {
    if (!(b.d01_cap > 0.0)) throw invalid_parameter("budget.d01_cap must be > 0");
}

} // namespace cuav
