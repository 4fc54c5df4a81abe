#pragma once

#include <cmath>

#include "cuav/geometry.hpp"
#include "cuav/solvers.hpp"
#include "cuav/types.hpp"

namespace cuav {

namespace detail {

/// g(x) = ln(1 + x) - x / (1 + x), the per-half-symbol KL kernel.
/// Evaluated through the all-positive series in u = x/(1+x) for small x,
/// where the direct form loses every significant digit.
inline double kl_kernel(double x) {
    const double u = x / (1.0 + x);
    if (x < 0.5) {
        double term = u;
        double sum = 0.0;
        for (int k = 2; k < 200; ++k) {
            term *= u;
            const double add = term / k;
            sum += add;
            if (add < 1e-18 * sum) break;
        }
        return sum;
    }
    return std::log1p(x) - u;
}

} // namespace detail

/// KL divergence (nats) between the warden's no-transmission and
/// transmission observation distributions for received power p_bar:
/// (n/2) [ln(1 + x) - x/(1+x)] with x = p_bar / sigma2_w.
inline double kl_divergence(const RadioParams& radio, double p_bar) {
    if (p_bar == 0.0) return 0.0;
    return 0.5 * static_cast<double>(radio.n) *
           detail::kl_kernel(p_bar / radio.sigma2_w);
}

/// Lower bound on the warden's minimum total detection error rate:
/// max(0, 1 - sqrt(d01 / 2)).
inline double error_rate_lower_bound(double d01) {
    return std::max(0.0, 1.0 - std::sqrt(0.5 * d01));
}

/// Unique received power at the warden for which the KL divergence equals
/// the budget cap. Bisection on the kernel with a doubling bracket;
/// residual below 1e-12 * max(1, cap).
inline double invert_kl_in_received_power(const RadioParams& radio,
                                          const CovertBudget& budget) {
    const double target = 2.0 * budget.d01_cap / static_cast<double>(radio.n);
    const auto residual = [&](double x) { return detail::kl_kernel(x) - target; };
    const double x = bisect_expanding(residual, 0.0, 1.0);
    return x * radio.sigma2_w;
}

/// Largest transmit power at a given placement for which the covertness
/// budget holds with equality. The warden's received power is linear in
/// P, so this is a direct division; the result is not clamped to p_max.
inline double max_covert_power(const EnvModel& env, const RadioParams& radio,
                               const PolarPlacement& p, const CovertBudget& budget) {
    const double p_bar_star = invert_kl_in_received_power(radio, budget);
    return p_bar_star / detail::willie_unit_gain(env, p);
}

/// Result of the angle-threshold inversion. The divergence at full power
/// is strictly increasing in the angle, so either every angle is
/// feasible, none is, or there is a unique crossing.
struct AngleThreshold {
    enum class Status { all_feasible, none_feasible, threshold };
    Status status;
    double theta;  ///< meaningful only when status == threshold

    bool has_threshold() const { return status == Status::threshold; }
};

/// Angle at range d_w where the full-power divergence crosses the budget
/// cap, with explicit endpoint outcomes instead of clamping.
inline AngleThreshold covert_angle_threshold(const EnvModel& env,
                                             const RadioParams& radio, double d_w,
                                             const CovertBudget& budget) {
    const auto d01_at = [&](double th) {
        return kl_divergence(radio,
                             willie_received_power(env, {d_w, th}, radio.p_max));
    };
    const double cap = budget.d01_cap;
    if (d01_at(kPi / 2.0) <= cap)
        return AngleThreshold{AngleThreshold::Status::all_feasible, kPi / 2.0};
    if (d01_at(0.0) > cap)
        return AngleThreshold{AngleThreshold::Status::none_feasible, 0.0};
    const double theta =
        bisect([&](double th) { return d01_at(th) - cap; }, Bracket{0.0, kPi / 2.0});
    return AngleThreshold{AngleThreshold::Status::threshold, theta};
}

/// Height at which the full-power divergence of a strictly vertical UAV
/// equals the budget cap. The received power sweeps all of (0, inf) as
/// the height does, so the crossing always exists.
inline double covert_height_threshold(const EnvModel& env, const RadioParams& radio,
                                      const CovertBudget& budget) {
    const double p_bar_star = invert_kl_in_received_power(radio, budget);
    const auto residual = [&](double h) {
        // decreasing in h; negate so the function rises through zero
        return p_bar_star - radio.p_max * detail::willie_unit_gain(env, {h, kPi / 2.0});
    };
    double lo = 1.0;
    int guard = 0;
    while (residual(lo) > 0.0) {
        lo *= 0.5;
        if (++guard > 1024) throw bracket_error("covert_height_threshold: no bracket");
    }
    return bisect_expanding(residual, lo, 2.0 * lo);
}

} // namespace cuav
