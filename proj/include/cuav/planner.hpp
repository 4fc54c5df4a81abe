#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "cuav/covertness.hpp"
#include "cuav/geometry.hpp"
#include "cuav/solvers.hpp"
#include "cuav/types.hpp"

namespace cuav {

/// The six orderings of {d_min, d_max} against {L cos(theta_min),
/// L / cos(theta_min)} that shape the reduced feasible region.
enum class Scenario { S1, S2, S3, S4, S5, S6 };

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::S1: return "S1";
        case Scenario::S2: return "S2";
        case Scenario::S3: return "S3";
        case Scenario::S4: return "S4";
        case Scenario::S5: return "S5";
        case Scenario::S6: return "S6";
    }
    return "?";
}

/// One piece of a reduced feasible region.
///
/// const_range_arc:      d fixed at `fixed`, theta in [lo, hi]
/// const_angle_segment:  theta fixed at `fixed`, d in [lo, hi]
/// above_bob_region:     d in [lo, hi], theta from theta_min up to the
///                       overhead locus arccos(L/d)
struct RegionPiece {
    enum class Kind { const_range_arc, const_angle_segment, above_bob_region };
    Kind kind;
    double fixed;
    double lo;
    double hi;
};

enum class Binding { covertness, max_power, range_min, range_max, angle_min, angle_max };

inline const char* to_string(Binding b) {
    switch (b) {
        case Binding::covertness: return "covertness";
        case Binding::max_power: return "max_power";
        case Binding::range_min: return "range_min";
        case Binding::range_max: return "range_max";
        case Binding::angle_min: return "angle_min";
        case Binding::angle_max: return "angle_max";
    }
    return "?";
}

/// Joint placement/power solution.
struct PlanSolution {
    PolarPlacement placement;
    double power;  ///< W
    double snr;    ///< effective SNR at the receiver (linear)
    double d01;    ///< achieved KL divergence (nats)
    Scenario scenario;
    std::string case_label;
    std::set<Binding> binding_constraints;
};

/// Grid resolution of the exhaustive oracle.
struct GridSpec {
    int n_d = 512;
    int n_theta = 512;
};

/// Knobs of the reduced-region search.
struct SearchParams {
    int grid_d = 256;         ///< 2-D region grid, range axis
    int grid_theta = 256;     ///< 2-D region grid, angle axis
    int refine_iters = 50;    ///< alternating 1-D refinement passes
    int scan_points = 512;    ///< coarse scan of 1-D pieces
    double tol_rel = 1e-8;    ///< golden-section tolerance
};

inline Scenario classify_scenario(const GeometryConstraints& geom) {
    validate(geom);
    const double c1 = geom.L * std::cos(geom.theta_min);
    const double c2 = geom.L / std::cos(geom.theta_min);
    const double dl = geom.d_min, dh = geom.d_max;
    // Boundary equalities resolve to the lowest-numbered match.
    if (dh <= c1) return Scenario::S1;
    if (dl <= c1 && dh <= c2) return Scenario::S2;
    if (c1 <= dl && dh <= c2) return Scenario::S3;
    if (dl <= c1 && c2 <= dh) return Scenario::S4;
    if (c1 <= dl && dl <= c2 && c2 <= dh) return Scenario::S5;
    return Scenario::S6;  // c2 <= dl
}

inline std::vector<RegionPiece> reduced_region(Scenario s,
                                               const GeometryConstraints& geom) {
    using K = RegionPiece::Kind;
    const double c1 = geom.L * std::cos(geom.theta_min);
    const double c2 = geom.L / std::cos(geom.theta_min);
    const double tl = geom.theta_min;
    switch (s) {
        case Scenario::S1:
            return {{K::const_range_arc, geom.d_max, tl,
                     std::acos(geom.d_max / geom.L)}};
        case Scenario::S2:
            return {{K::const_angle_segment, tl, c1, geom.d_max}};
        case Scenario::S3:
            return {{K::const_angle_segment, tl, geom.d_min, geom.d_max}};
        case Scenario::S4:
            return {{K::const_angle_segment, tl, c1, c2},
                    {K::above_bob_region, 0.0, c2, geom.d_max}};
        case Scenario::S5:
            return {{K::const_angle_segment, tl, geom.d_min, c2},
                    {K::above_bob_region, 0.0, c2, geom.d_max}};
        case Scenario::S6:
            return {{K::above_bob_region, 0.0, geom.d_min, geom.d_max}};
    }
    return {};
}

namespace detail {

/// Upper angle of the above-receiver locus at range d, floored at the
/// box's angle bound.
inline double overhead_angle(double L, double d, double theta_min) {
    if (d <= L) return theta_min;
    return std::max(theta_min, std::acos(L / d));
}

/// Objective with the inner power rule P = min(p_max, covert power)
/// applied. p_bar_star is the inverted covertness budget, hoisted out of
/// the point loop because it does not depend on the placement.
inline double placement_objective(const EnvModel& env, const RadioParams& radio,
                                  double L, double p_bar_star,
                                  const PolarPlacement& p) {
    const double p_cov = p_bar_star / willie_unit_gain(env, p);
    const double power = std::min(radio.p_max, p_cov);
    return power * bob_link_gain(env, p, L) / radio.sigma2_b;
}

struct PointValue {
    PolarPlacement p;
    double value = -std::numeric_limits<double>::infinity();
};

/// Maximise the objective over one region piece.
inline PointValue maximize_piece(const EnvModel& env, const RadioParams& radio,
                                 const GeometryConstraints& geom, double p_bar_star,
                                 const RegionPiece& piece, const SearchParams& sp) {
    using K = RegionPiece::Kind;
    const double L = geom.L;
    const auto value = [&](const PolarPlacement& p) {
        return placement_objective(env, radio, L, p_bar_star, p);
    };
    if (piece.kind == K::const_range_arc) {
        const auto r = maximize_scanned(
            [&](double th) { return value({piece.fixed, th}); }, piece.lo, piece.hi,
            sp.scan_points, sp.tol_rel);
        return {{piece.fixed, r.x}, r.value};
    }
    if (piece.kind == K::const_angle_segment) {
        const auto r = maximize_scanned(
            [&](double d) { return value({d, piece.fixed}); }, piece.lo, piece.hi,
            sp.scan_points, sp.tol_rel);
        return {{r.x, piece.fixed}, r.value};
    }
    // above_bob_region: grid over (d, normalized angle), then alternating
    // 1-D refinement.
    const double tl = geom.theta_min;
    const auto theta_at = [&](double d, double u) {
        return tl + u * (overhead_angle(L, d, tl) - tl);
    };
    PointValue best;
    double best_u = 0.0;
    for (int i = 0; i <= sp.grid_d; ++i) {
        const double d = piece.lo + (piece.hi - piece.lo) * i / sp.grid_d;
        for (int j = 0; j <= sp.grid_theta; ++j) {
            const double u = static_cast<double>(j) / sp.grid_theta;
            const PolarPlacement p{d, theta_at(d, u)};
            const double v = value(p);
            if (v > best.value) {
                best = {p, v};
                best_u = u;
            }
        }
    }
    double d = best.p.d_w;
    double u = best_u;
    for (int it = 0; it < sp.refine_iters; ++it) {
        const auto rd = maximize_scanned(
            [&](double dd) { return value({dd, theta_at(dd, u)}); }, piece.lo,
            piece.hi, 64, sp.tol_rel);
        d = rd.x;
        const auto ru = maximize_scanned(
            [&](double uu) { return value({d, theta_at(d, uu)}); }, 0.0, 1.0, 64,
            sp.tol_rel);
        u = ru.x;
        if (ru.value > best.value) best = {{d, theta_at(d, u)}, ru.value};
    }
    return best;
}

inline std::set<Binding> bindings_at(const RadioParams& radio,
                                     const GeometryConstraints& geom,
                                     const PolarPlacement& p, double power,
                                     double d01, const CovertBudget& budget) {
    std::set<Binding> out;
    const double cap = budget.d01_cap;
    if (std::abs(d01 - cap) <= 1e-9 * std::max(1.0, cap)) out.insert(Binding::covertness);
    if (std::abs(power - radio.p_max) <= 1e-9 * radio.p_max) out.insert(Binding::max_power);
    const double dtol = 1e-9 * geom.L;
    if (std::abs(p.d_w - geom.d_min) <= dtol) out.insert(Binding::range_min);
    if (std::abs(p.d_w - geom.d_max) <= dtol) out.insert(Binding::range_max);
    if (std::abs(p.theta_w - geom.theta_min) <= 1e-9) out.insert(Binding::angle_min);
    if (std::abs(p.theta_w - kPi / 2.0) <= 1e-9) out.insert(Binding::angle_max);
    return out;
}

inline PlanSolution finalize(const EnvModel& env, const RadioParams& radio,
                             const GeometryConstraints& geom, Scenario s,
                             const std::string& label, const PolarPlacement& p,
                             double power) {
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    PlanSolution sol;
    sol.placement = p;
    sol.power = power;
    sol.snr = effective_snr(env, radio, p, geom.L, power);
    sol.d01 = kl_divergence(radio, willie_received_power(env, p, power));
    sol.scenario = s;
    sol.case_label = label;
    sol.binding_constraints = bindings_at(radio, geom, p, power, sol.d01, budget);
    return sol;
}

} // namespace detail

/// Explicit solution for scenario S1: the optimum lives on the outer arc
/// d = d_max, and the four cases follow from where the unconstrained
/// angle optimum sits relative to the angle bound and from whether the
/// covertness budget is already exhausted at full power.
inline PlanSolution solve_scenario1(const EnvModel& env, const RadioParams& radio,
                                    const GeometryConstraints& geom,
                                    const SearchParams& sp = {}) {
    validate(env);
    validate(radio);
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    const double cap = budget.d01_cap;
    const double dbar = geom.d_max;
    const double theta_circ = optimal_angle_given_range(env, geom.L, dbar);
    const auto d01_full = [&](double th) {
        return kl_divergence(radio, willie_received_power(env, {dbar, th}, radio.p_max));
    };

    if (theta_circ < geom.theta_min) {
        // objective and divergence both decrease with the angle here, so
        // the angle bound is tight
        const PolarPlacement p{dbar, geom.theta_min};
        if (d01_full(geom.theta_min) <= cap)
            return detail::finalize(env, radio, geom, Scenario::S1, "A", p, radio.p_max);
        const double p_eps = max_covert_power(env, radio, p, budget);
        return detail::finalize(env, radio, geom, Scenario::S1, "B", p, p_eps);
    }

    if (d01_full(theta_circ) <= cap) {
        const PolarPlacement p{dbar, theta_circ};
        return detail::finalize(env, radio, geom, Scenario::S1, "C", p, radio.p_max);
    }

    // joint 1-D search over the angle with the covertness budget tight
    const double p_bar_star = invert_kl_in_received_power(radio, budget);
    double th_lo = geom.theta_min;
    const AngleThreshold at = covert_angle_threshold(env, radio, dbar, budget);
    if (at.has_threshold()) th_lo = std::max(th_lo, at.theta);
    const auto gamma = [&](double th) {
        return detail::placement_objective(env, radio, geom.L, p_bar_star, {dbar, th});
    };
    const auto r = maximize_scanned(gamma, th_lo, theta_circ, sp.scan_points, sp.tol_rel);
    const PolarPlacement p{dbar, r.x};
    const double power =
        std::min(radio.p_max, max_covert_power(env, radio, p, budget));
    return detail::finalize(env, radio, geom, Scenario::S1, "D", p, power);
}

/// Reduced-region solver for any scenario. Dispatches to the explicit S1
/// solution and otherwise maximises the objective over each region piece
/// with the power rule applied pointwise.
inline PlanSolution solve_general(const EnvModel& env, const RadioParams& radio,
                                  const GeometryConstraints& geom,
                                  const SearchParams& sp = {}) {
    validate(env);
    validate(radio);
    const Scenario s = classify_scenario(geom);
    if (s == Scenario::S1) return solve_scenario1(env, radio, geom, sp);
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    const double p_bar_star = invert_kl_in_received_power(radio, budget);
    detail::PointValue best;
    for (const RegionPiece& piece : reduced_region(s, geom)) {
        const auto r = detail::maximize_piece(env, radio, geom, p_bar_star, piece, sp);
        if (r.value > best.value) best = r;
    }
    const double power =
        std::min(radio.p_max, max_covert_power(env, radio, best.p, budget));
    return detail::finalize(env, radio, geom, s, "search", best.p, power);
}

/// Explicit solution for a strictly vertical UAV with height bounds
/// [h_min, h_max]. The case conditions are evaluated in the order
/// 1, 3, 2, 4, 5 with non-strict comparisons so that exactly one case
/// fires and adjacent cases coincide on their shared boundaries.
inline PlanSolution solve_vertical(const EnvModel& env, const RadioParams& radio,
                                   double h_min, double h_max, double L) {
    validate(env);
    validate(radio);
    if (!(h_min > 0.0 && h_min < h_max))
        throw invalid_parameter("vertical bounds must satisfy 0 < h_min < h_max");
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    const double h_dag = optimal_height_unconstrained(env, L);
    const double h_ddag = covert_height_threshold(env, radio, budget);
    const GeometryConstraints geom{L, h_min, h_max, kPi / 2.0};

    const auto make = [&](const char* label, double h, double power) {
        return detail::finalize(env, radio, geom, Scenario::S3, label,
                                {h, kPi / 2.0}, power);
    };
    if (h_dag <= h_min && h_ddag <= h_min) return make("1", h_min, radio.p_max);
    if (h_ddag >= h_max) {
        const double p_dag =
            max_covert_power(env, radio, {h_max, kPi / 2.0}, budget);
        return make("3", h_max, p_dag);
    }
    if (h_min < h_ddag && h_ddag < h_max && h_dag <= h_ddag)
        return make("2", h_ddag, radio.p_max);
    if (h_min < h_dag && h_dag < h_max && h_ddag <= h_dag)
        return make("4", h_dag, radio.p_max);
    if (h_dag >= h_max && h_ddag <= h_max) return make("5", h_max, radio.p_max);
    throw solver_error("solve_vertical: case table did not cover the inputs");
}

/// Closest feasible point to the receiver (grid + alternating refinement).
inline PolarPlacement heuristic_nearest(const GeometryConstraints& geom,
                                        const SearchParams& sp = {}) {
    validate(geom);
    const auto neg_range = [&](const PolarPlacement& p) {
        return -bob_range(p, geom.L);
    };
    detail::PointValue best;
    for (int i = 0; i <= sp.grid_d; ++i) {
        const double d = geom.d_min + (geom.d_max - geom.d_min) * i / sp.grid_d;
        for (int j = 0; j <= sp.grid_theta; ++j) {
            const double th =
                geom.theta_min + (kPi / 2.0 - geom.theta_min) * j / sp.grid_theta;
            const double v = neg_range({d, th});
            if (v > best.value) best = {{d, th}, v};
        }
    }
    double d = best.p.d_w, th = best.p.theta_w;
    for (int it = 0; it < sp.refine_iters; ++it) {
        d = maximize_scanned([&](double dd) { return neg_range({dd, th}); },
                             geom.d_min, geom.d_max, 64, sp.tol_rel)
                .x;
        th = maximize_scanned([&](double tt) { return neg_range({d, tt}); },
                              geom.theta_min, kPi / 2.0, 64, sp.tol_rel)
                 .x;
    }
    return {d, th};
}

/// Feasible point with the largest LoS probability to the receiver,
/// equivalently the largest elevation angle at the receiver.
inline PolarPlacement heuristic_max_angle(const EnvModel& env,
                                          const GeometryConstraints& geom,
                                          const SearchParams& sp = {}) {
    validate(geom);
    const auto score = [&](const PolarPlacement& p) {
        return los_probability(env, bob_elevation(p, geom.L));
    };
    detail::PointValue best;
    for (int i = 0; i <= sp.grid_d; ++i) {
        const double d = geom.d_min + (geom.d_max - geom.d_min) * i / sp.grid_d;
        for (int j = 0; j <= sp.grid_theta; ++j) {
            const double th =
                geom.theta_min + (kPi / 2.0 - geom.theta_min) * j / sp.grid_theta;
            const double v = score({d, th});
            if (v > best.value) best = {{d, th}, v};
        }
    }
    double d = best.p.d_w, th = best.p.theta_w;
    for (int it = 0; it < sp.refine_iters; ++it) {
        d = maximize_scanned([&](double dd) { return score({dd, th}); }, geom.d_min,
                             geom.d_max, 64, sp.tol_rel)
                .x;
        th = maximize_scanned([&](double tt) { return score({d, tt}); },
                              geom.theta_min, kPi / 2.0, 64, sp.tol_rel)
                 .x;
    }
    return {d, th};
}

/// Exhaustive grid search over the full constraint box with the power
/// rule applied pointwise. The argmax keeps the lowest linear index on
/// ties, so the result is independent of any future evaluation-order
/// change. Meant for validation, not production solves.
inline PlanSolution brute_force_oracle(const EnvModel& env, const RadioParams& radio,
                                       const GeometryConstraints& geom,
                                       const GridSpec& grid = {}) {
    validate(env);
    validate(radio);
    validate(geom);
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    const double p_bar_star = invert_kl_in_received_power(radio, budget);
    const int nd = std::max(2, grid.n_d);
    const int nt = std::max(2, grid.n_theta);
    detail::PointValue best;
    for (int i = 0; i < nd; ++i) {
        const double d =
            geom.d_min + (geom.d_max - geom.d_min) * i / static_cast<double>(nd - 1);
        for (int j = 0; j < nt; ++j) {
            const double th = geom.theta_min + (kPi / 2.0 - geom.theta_min) * j /
                                                   static_cast<double>(nt - 1);
            const PolarPlacement p{d, th};
            const double v = detail::placement_objective(env, radio, geom.L,
                                                         p_bar_star, p);
            if (v > best.value) best = {p, v};
        }
    }
    const double power =
        std::min(radio.p_max, max_covert_power(env, radio, best.p, budget));
    return detail::finalize(env, radio, geom, classify_scenario(geom), "oracle",
                            best.p, power);
}

} // namespace cuav
