#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "cuav/geometry.hpp"
#include "cuav/types.hpp"

namespace cuav {

class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bracketing interval for bisection. tol_rel bounds the final interval
/// width relative to max(1, |root|).
struct Bracket {
    double lo;
    double hi;
    double tol_rel = 1e-15;
};

/// Bisection on a sign-changing function. Requires f(lo) * f(hi) <= 0;
/// runs at most 200 iterations, which exhausts double precision for any
/// sane bracket.
template <class F>
double bisect(F&& f, Bracket b) {
    if (!(b.lo < b.hi)) throw bracket_error("bisect: bracket endpoints not ordered");
    double flo = f(b.lo);
    double fhi = f(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw bracket_error("bisect: no sign change over bracket");
    double lo = b.lo, hi = b.hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= b.tol_rel * std::max(1.0, std::abs(mid))) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Expands [lo, hi] upward by doubling until f changes sign, then bisects.
/// f must be monotone with f(lo) on the `rising` side.
template <class F>
double bisect_expanding(F&& f, double lo, double hi, double tol_rel = 1e-15) {
    double fhi = f(hi);
    const double flo = f(lo);
    if (flo == 0.0) return lo;
    int guard = 0;
    while ((fhi < 0.0) == (flo < 0.0)) {
        lo = hi;
        hi *= 2.0;
        fhi = f(hi);
        if (++guard > 1024) throw bracket_error("bisect_expanding: no sign change found");
    }
    return bisect(std::forward<F>(f), Bracket{lo, hi, tol_rel});
}

struct MaxResult {
    double x;
    double value;
};

/// Golden-section maximisation of a unimodal function on [lo, hi].
template <class F>
MaxResult maximize_golden(F&& f, double lo, double hi, double tol_rel = 1e-8,
                          int max_iter = 200) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol_rel * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
    }
    const double x = 0.5 * (a + b);
    return MaxResult{x, f(x)};
}

/// Coarse scan followed by golden-section refinement around the best
/// cell, with the interval endpoints always considered. Robust against
/// profiles that are not exactly unimodal.
template <class F>
MaxResult maximize_scanned(F&& f, double lo, double hi, int scan_points = 512,
                           double tol_rel = 1e-8) {
    if (!(hi > lo)) return MaxResult{lo, f(lo)};
    int best = 0;
    double best_v = f(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * i / scan_points;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    const double a = lo + (hi - lo) * std::max(0, best - 1) / scan_points;
    const double b = lo + (hi - lo) * std::min(scan_points, best + 1) / scan_points;
    MaxResult r = maximize_golden(f, a, b, tol_rel);
    if (best_v > r.value) r = MaxResult{lo + (hi - lo) * best / scan_points, best_v};
    return r;
}

/// Gain-maximising height of a strictly vertical UAV: the unique fixed
/// point of h = -(180 b L)/(pi xi_los) * [1 - p(arctan(h/L))]. Depends on
/// the environment and L only.
inline double optimal_height_unconstrained(const EnvModel& env, double L) {
    const auto residual = [&](double h) {
        const double p = los_probability(env, std::atan(h / L));
        return h + (180.0 * env.b * L / (kPi * env.xi_los)) * (1.0 - p);
    };
    // residual(0) < 0 and residual is strictly increasing.
    return bisect_expanding(residual, 0.0, L);
}

/// Gain-maximising range for a fixed angle. The root of the range
/// residual lies in [L cos(theta_w), L / cos(theta_w)]; when the residual
/// never becomes negative there, the maximum sits at the kink directly
/// above the receiver and the upper endpoint is returned.
inline double optimal_range_given_angle(const EnvModel& env, double L, double theta_w) {
    if (theta_w == 0.0) return L;  // interval collapses
    if (theta_w > kPi / 2.0 - 1e-6)
        return optimal_height_unconstrained(env, L);  // vertical limit
    const double c = std::cos(theta_w);
    const double lo = L * c;
    const double hi = L / c;
    const auto residual = [&](double d) {
        return range_stationarity_residual(env, L, theta_w, d);
    };
    if (residual(hi) >= 0.0) return hi;
    return bisect(residual, Bracket{lo, hi});
}

/// Gain-maximising angle for a fixed range. The root lies in
/// [0, arccos(min(d_w, L) / max(d_w, L))]; for d_w > L the maximum can
/// sit at the kink directly above the receiver, in which case the upper
/// endpoint is returned.
inline double optimal_angle_given_range(const EnvModel& env, double L, double d_w) {
    if (d_w == L) return 0.0;  // interval collapses
    const double hi = std::acos(std::min(d_w, L) / std::max(d_w, L));
    const auto residual = [&](double th) {
        return angle_stationarity_residual(env, L, d_w, th);
    };
    if (residual(hi) >= 0.0) return hi;
    return bisect(residual, Bracket{0.0, hi});
}

} // namespace cuav
