#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cuav/planner.hpp"
#include "test_helpers.hpp"

using namespace cuav;
using Catch::Approx;

namespace {

const EnvModel kEnv{4.88, 0.429, -2.0, -3.0};

GeometryConstraints random_geometry_for(Scenario target, std::mt19937& rng) {
    using testutil::uniform;
    for (;;) {
        const double theta_min = uniform(rng, 0.15, 1.2);
        const double L = uniform(rng, 500.0, 20000.0);
        const double c1 = L * std::cos(theta_min);
        const double c2 = L / std::cos(theta_min);
        double dl = 0.0, dh = 0.0;
        switch (target) {
            case Scenario::S1:
                dh = c1 * uniform(rng, 0.3, 0.999);
                dl = dh * uniform(rng, 0.2, 0.9);
                break;
            case Scenario::S2:
                dl = c1 * uniform(rng, 0.2, 0.999);
                dh = c1 + (c2 - c1) * uniform(rng, 0.05, 0.999);
                break;
            case Scenario::S3: {
                const double u = uniform(rng, 0.001, 0.45);
                const double v = uniform(rng, 0.55, 0.999);
                dl = c1 + (c2 - c1) * u;
                dh = c1 + (c2 - c1) * v;
                break;
            }
            case Scenario::S4:
                dl = c1 * uniform(rng, 0.2, 0.999);
                dh = c2 * uniform(rng, 1.05, 2.5);
                break;
            case Scenario::S5:
                dl = c1 + (c2 - c1) * uniform(rng, 0.05, 0.95);
                dh = c2 * uniform(rng, 1.05, 2.5);
                break;
            case Scenario::S6:
                dl = c2 * uniform(rng, 1.01, 2.0);
                dh = dl * uniform(rng, 1.1, 2.5);
                break;
        }
        const GeometryConstraints geom{L, dl, dh, theta_min};
        if (!(dl > 0.0 && dl < dh)) continue;
        if (classify_scenario(geom) != target) continue;
        return geom;
    }
}

RadioParams random_radio(std::mt19937& rng) {
    using testutil::uniform;
    RadioParams radio;
    radio.sigma2_b = 1e-12;
    radio.sigma2_w = dbm_to_watt(uniform(rng, -70.0, -40.0));
    radio.n = 50 + static_cast<long>(uniform(rng, 0.0, 450.0));
    radio.p_max = dbm_to_watt(uniform(rng, 0.0, 20.0));
    radio.epsilon = uniform(rng, 0.01, 0.3);
    return radio;
}

/// Distance (in range and angle) from a point to a region piece.
struct PieceDistance {
    double dd;
    double dt;
};

double interval_distance(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

PieceDistance distance_to_piece(const RegionPiece& piece,
                                const GeometryConstraints& geom,
                                const PolarPlacement& p, double cell_d) {
    using K = RegionPiece::Kind;
    if (piece.kind == K::const_range_arc)
        return {std::abs(p.d_w - piece.fixed),
                interval_distance(p.theta_w, piece.lo, piece.hi)};
    if (piece.kind == K::const_angle_segment)
        return {interval_distance(p.d_w, piece.lo, piece.hi),
                std::abs(p.theta_w - piece.fixed)};
    const double dd = interval_distance(p.d_w, piece.lo, piece.hi);
    // the overhead locus rises with d; evaluate it one cell outward
    const double d_probe = std::min(piece.hi, p.d_w + cell_d);
    const double upper = d_probe > geom.L
                             ? std::max(geom.theta_min, std::acos(geom.L / d_probe))
                             : geom.theta_min;
    return {dd, interval_distance(p.theta_w, geom.theta_min, upper)};
}

void check_solution_feasible(const PlanSolution& sol, const RadioParams& radio,
                             const GeometryConstraints& geom) {
    const double cap = 2.0 * radio.epsilon * radio.epsilon;
    CHECK(sol.d01 <= cap + 1e-9);
    CHECK(sol.power <= radio.p_max * (1.0 + 1e-12));
    CHECK(sol.placement.d_w >= geom.d_min - 1e-9 * geom.L);
    CHECK(sol.placement.d_w <= geom.d_max + 1e-9 * geom.L);
    CHECK(sol.placement.theta_w >= geom.theta_min - 1e-12);
    CHECK(sol.placement.theta_w <= kPi / 2.0 + 1e-12);
}

} // namespace

TEST_CASE("classify_scenario on the reference geometries", "[planner]") {
    // far receiver, 30-degree floor, 1-3 km ring
    CHECK(classify_scenario({10000.0, 1000.0, 3000.0, kPi / 6.0}) == Scenario::S1);
    // 500 m receiver distance puts the whole ring past the overhead locus
    CHECK(classify_scenario({500.0, 1000.0, 3000.0, kPi / 6.0}) == Scenario::S6);
    // equality at the lower critical range resolves to the smaller label
    const double theta = 0.5;
    const double L = 8000.0;
    const double c1 = L * std::cos(theta);
    CHECK(classify_scenario({L, 2000.0, c1, theta}) == Scenario::S1);
    // the mid-range ladder
    CHECK(classify_scenario({2000.0, 1000.0, 3000.0, kPi / 6.0}) == Scenario::S4);
    CHECK(classify_scenario({1000.0, 1000.0, 3000.0, kPi / 6.0}) == Scenario::S5);
}

TEST_CASE("classification matches its defining inequalities on random draws",
          "[planner]") {
    std::mt19937 rng(301);
    for (int i = 0; i < 300; ++i) {
        const auto target = static_cast<Scenario>(i % 6);
        const GeometryConstraints geom = random_geometry_for(target, rng);
        const double c1 = geom.L * std::cos(geom.theta_min);
        const double c2 = geom.L / std::cos(geom.theta_min);
        switch (classify_scenario(geom)) {
            case Scenario::S1: CHECK(geom.d_max <= c1); break;
            case Scenario::S2:
                CHECK(geom.d_min <= c1);
                CHECK(geom.d_max <= c2);
                break;
            case Scenario::S3:
                CHECK(geom.d_min >= c1);
                CHECK(geom.d_max <= c2);
                break;
            case Scenario::S4:
                CHECK(geom.d_min <= c1);
                CHECK(geom.d_max >= c2);
                break;
            case Scenario::S5:
                CHECK(geom.d_min >= c1);
                CHECK(geom.d_min <= c2);
                CHECK(geom.d_max >= c2);
                break;
            case Scenario::S6: CHECK(geom.d_min >= c2); break;
        }
    }
}

TEST_CASE("reduced regions stay inside the constraint box", "[planner]") {
    std::mt19937 rng(307);
    for (int i = 0; i < 120; ++i) {
        const auto target = static_cast<Scenario>(i % 6);
        const GeometryConstraints geom = random_geometry_for(target, rng);
        const auto pieces = reduced_region(classify_scenario(geom), geom);
        REQUIRE(!pieces.empty());
        for (const auto& piece : pieces) {
            for (int k = 0; k <= 32; ++k) {
                const double u = k / 32.0;
                PolarPlacement p{0, 0};
                if (piece.kind == RegionPiece::Kind::const_range_arc)
                    p = {piece.fixed, piece.lo + (piece.hi - piece.lo) * u};
                else if (piece.kind == RegionPiece::Kind::const_angle_segment)
                    p = {piece.lo + (piece.hi - piece.lo) * u, piece.fixed};
                else {
                    const double d = piece.lo + (piece.hi - piece.lo) * u;
                    const double hi_t = d > geom.L
                                            ? std::max(geom.theta_min,
                                                       std::acos(geom.L / d))
                                            : geom.theta_min;
                    p = {d, 0.5 * (geom.theta_min + hi_t)};
                }
                CHECK(p.d_w >= geom.d_min - 1e-9 * geom.L);
                CHECK(p.d_w <= geom.d_max + 1e-9 * geom.L);
                CHECK(p.theta_w >= geom.theta_min - 1e-12);
                CHECK(p.theta_w <= kPi / 2.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("S1 reduced region is the outer arc with the stated endpoints",
          "[planner]") {
    const GeometryConstraints geom{10000.0, 1000.0, 3000.0, kPi / 6.0};
    const auto pieces = reduced_region(Scenario::S1, geom);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].kind == RegionPiece::Kind::const_range_arc);
    CHECK(pieces[0].fixed == geom.d_max);
    CHECK(pieces[0].lo == geom.theta_min);
    CHECK(pieces[0].hi == Approx(std::acos(geom.d_max / geom.L)).epsilon(1e-14));
}

TEST_CASE("S6 region is bounded above by the overhead locus", "[planner]") {
    const GeometryConstraints geom{500.0, 1000.0, 3000.0, kPi / 6.0};
    const auto pieces = reduced_region(Scenario::S6, geom);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].kind == RegionPiece::Kind::above_bob_region);
    CHECK(pieces[0].lo == geom.d_min);
    CHECK(pieces[0].hi == geom.d_max);
    // a placement on the locus is directly above the receiver
    const double d = 2000.0;
    const double th = std::acos(geom.L / d);
    CHECK(bob_elevation({d, th}, geom.L) == Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("scenario-1 cases cover the budget/power regimes", "[planner]") {
    const GeometryConstraints geom{10000.0, 1000.0, 3000.0, kPi / 8.0};
    RadioParams radio{1e-12, 1e-9, 200, 0.01, 0.1};

    // generous budget, unconstrained angle optimum inside the arc
    radio.epsilon = 0.99;
    auto sol = solve_scenario1(kEnv, radio, geom);
    CHECK(sol.case_label == "C");
    CHECK(sol.power == radio.p_max);
    check_solution_feasible(sol, radio, geom);

    // tight budget keeps the equality search active
    radio.epsilon = 0.1;
    sol = solve_scenario1(kEnv, radio, geom);
    CHECK(sol.case_label == "D");
    CHECK(sol.placement.d_w == geom.d_max);
    check_solution_feasible(sol, radio, geom);

    // raise the angle floor above the unconstrained optimum: cases A/B
    const GeometryConstraints steep{10000.0, 1000.0, 3000.0, 1.05};
    radio.epsilon = 0.99;
    sol = solve_scenario1(kEnv, radio, steep);
    CHECK(sol.case_label == "A");
    CHECK(sol.placement.theta_w == steep.theta_min);
    CHECK(sol.power == radio.p_max);
    check_solution_feasible(sol, radio, steep);

    radio.epsilon = 0.05;
    sol = solve_scenario1(kEnv, radio, steep);
    CHECK(sol.case_label == "B");
    CHECK(sol.placement.theta_w == steep.theta_min);
    CHECK(sol.power < radio.p_max);
    CHECK(sol.d01 == Approx(2.0 * radio.epsilon * radio.epsilon).epsilon(1e-9));
    check_solution_feasible(sol, radio, steep);
}

TEST_CASE("case D matches a dense grid over angle and power", "[planner]") {
    // power cap chosen so the full-power threshold angle is interior
    const GeometryConstraints geom{10000.0, 1000.0, 3000.0, kPi / 8.0};
    RadioParams radio{1e-12, 1e-9, 200, 9e-5, 0.0};
    const double d01_mid = kl_divergence(
        radio, willie_received_power(kEnv, {geom.d_max, kPi / 6.0}, radio.p_max));
    radio.epsilon = std::sqrt(0.5 * d01_mid);
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);

    const auto at = covert_angle_threshold(kEnv, radio, geom.d_max, budget);
    REQUIRE(at.has_threshold());
    CHECK(at.theta > geom.theta_min);

    const PlanSolution sol = solve_scenario1(kEnv, radio, geom);
    CHECK(sol.case_label == "D");
    check_solution_feasible(sol, radio, geom);

    // exhaustive (theta, power) grid with the covertness filter
    const double th_hi = std::acos(geom.d_max / geom.L);
    double best = 0.0;
    const int n_t = 2000, n_p = 2000;
    for (int i = 0; i <= n_t; ++i) {
        const double th = geom.theta_min + (th_hi - geom.theta_min) * i / n_t;
        const PolarPlacement p{geom.d_max, th};
        const double f = bob_link_gain(kEnv, p, geom.L);
        const double w = willie_received_power(kEnv, p, 1.0);
        for (int j = 1; j <= n_p; ++j) {
            const double P = radio.p_max * j / n_p;
            if (kl_divergence(radio, P * w) > budget.d01_cap) break;
            best = std::max(best, P * f / radio.sigma2_b);
        }
    }
    CHECK(sol.snr >= best * (1.0 - 1e-3));
    CHECK(sol.snr <= best * (1.0 + 1e-3));
}

TEST_CASE("solve_general matches the exhaustive oracle across scenarios",
          "[planner]") {
    std::mt19937 rng(311);
    for (int i = 0; i < 12; ++i) {
        const auto target = static_cast<Scenario>(i % 6);
        const GeometryConstraints geom = random_geometry_for(target, rng);
        const RadioParams radio = random_radio(rng);
        const PlanSolution sol = solve_general(kEnv, radio, geom);
        const PlanSolution oracle = brute_force_oracle(kEnv, radio, geom, {256, 256});
        check_solution_feasible(sol, radio, geom);
        CHECK(sol.snr >= oracle.snr * (1.0 - 1e-3));
    }
}

TEST_CASE("oracle optimum lies inside the reduced region", "[planner]") {
    std::mt19937 rng(313);
    for (int i = 0; i < 12; ++i) {
        const auto target = static_cast<Scenario>(i % 6);
        const GeometryConstraints geom = random_geometry_for(target, rng);
        const RadioParams radio = random_radio(rng);
        const GridSpec grid{256, 256};
        const PlanSolution oracle = brute_force_oracle(kEnv, radio, geom, grid);
        const double cell_d = (geom.d_max - geom.d_min) / (grid.n_d - 1);
        const double cell_t = (kPi / 2.0 - geom.theta_min) / (grid.n_theta - 1);
        bool inside = false;
        for (const auto& piece : reduced_region(classify_scenario(geom), geom)) {
            const auto dist = distance_to_piece(piece, geom, oracle.placement, cell_d);
            if (dist.dd <= cell_d * 1.01 && dist.dt <= cell_t * 1.01) inside = true;
        }
        CHECK(inside);
    }
}

TEST_CASE("scenario boundaries hand over smoothly", "[planner]") {
    // d_max exactly at the lower critical range: S1 and the nudged S2
    // geometry must agree
    const double theta = 0.5;
    const double L = 8000.0;
    const double c1 = L * std::cos(theta);
    const RadioParams radio{1e-12, 1e-9, 200, 0.01, 0.1};
    const GeometryConstraints at_boundary{L, 2000.0, c1, theta};
    const GeometryConstraints nudged{L, 2000.0, c1 * (1.0 + 1e-9), theta};
    CHECK(classify_scenario(at_boundary) == Scenario::S1);
    CHECK(classify_scenario(nudged) == Scenario::S2);
    const PlanSolution a = solve_general(kEnv, radio, at_boundary);
    const PlanSolution b = solve_general(kEnv, radio, nudged);
    CHECK(a.snr == Approx(b.snr).epsilon(1e-6));
}

TEST_CASE("vertical case table follows the loosening budget", "[planner]") {
    const EnvModel env{4.88, 0.429, -3.0, -3.0};
    RadioParams radio{1e-12, 1e-7, 200, 0.01, 0.0};
    std::string prev_case;
    double prev_h2 = 1e300;
    bool saw3 = false, saw2 = false, saw4 = false;
    for (double eps = 0.005; eps <= 0.1001; eps += 0.005) {
        radio.epsilon = eps;
        const PlanSolution sol = solve_vertical(env, radio, 100.0, 400.0, 1000.0);
        check_solution_feasible(sol, radio,
                                GeometryConstraints{1000.0, 100.0, 400.0, kPi / 2.0});
        if (sol.case_label == "3") {
            saw3 = true;
            CHECK(!saw2);
            CHECK(!saw4);
        } else if (sol.case_label == "2") {
            saw2 = true;
            CHECK(!saw4);
            CHECK(sol.placement.d_w < prev_h2);
            prev_h2 = sol.placement.d_w;
        } else {
            CHECK(sol.case_label == "4");
            saw4 = true;
        }
    }
    CHECK((saw3 && saw2 && saw4));
}

TEST_CASE("unconstrained height is immune to power and receiver noise",
          "[planner]") {
    const EnvModel env{4.88, 0.429, -3.0, -3.0};
    const RadioParams base{1e-12, 1e-7, 200, 0.01, 0.45};
    const PlanSolution ref = solve_vertical(env, base, 100.0, 400.0, 1000.0);
    REQUIRE(ref.case_label == "4");
    for (const double scale : {0.1, 10.0}) {
        RadioParams r = base;
        r.p_max = base.p_max * scale;
        const PlanSolution sol = solve_vertical(env, r, 100.0, 400.0, 1000.0);
        CHECK(sol.case_label == "4");
        CHECK(sol.placement.d_w == Approx(ref.placement.d_w).epsilon(1e-10));
        RadioParams rb = base;
        rb.sigma2_b = base.sigma2_b * scale;
        const PlanSolution solb = solve_vertical(env, rb, 100.0, 400.0, 1000.0);
        CHECK(solb.placement.d_w == Approx(ref.placement.d_w).epsilon(1e-10));
    }
}

TEST_CASE("vertical solution matches a dense height/power grid", "[planner]") {
    const EnvModel env{4.88, 0.429, -3.0, -3.0};
    RadioParams radio{1e-12, 1e-7, 200, 0.01, 0.0};
    for (const double eps : {0.008, 0.025, 0.06}) {
        radio.epsilon = eps;
        const PlanSolution sol = solve_vertical(env, radio, 100.0, 400.0, 1000.0);
        const CovertBudget budget = CovertBudget::from_epsilon(eps);
        const double p_bar = invert_kl_in_received_power(radio, budget);
        double best = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double h = 100.0 + 300.0 * i / 20000.0;
            const PolarPlacement p{h, kPi / 2.0};
            const double power =
                std::min(radio.p_max, p_bar / willie_received_power(env, p, 1.0));
            best = std::max(best, effective_snr(env, radio, p, 1000.0, power));
        }
        CHECK(sol.snr >= best * (1.0 - 1e-3));
        CHECK(sol.snr <= best * (1.0 + 1e-3));
    }
}

TEST_CASE("vertical boundary parameter sets keep adjacent cases consistent",
          "[planner]") {
    // budget tuned so the full-power height threshold meets the cap
    // exactly at the ceiling; with the fixed-point height below the
    // ceiling the neighbours are cases 3 and 2
    {
        const EnvModel env{4.88, 0.429, -3.0, -3.0};
        RadioParams radio{1e-12, 1e-7, 200, 0.01, 0.0};
        const double cap = kl_divergence(
            radio, willie_received_power(env, {400.0, kPi / 2.0}, radio.p_max));
        radio.epsilon = std::sqrt(0.5 * cap);
        const PlanSolution sol = solve_vertical(env, radio, 100.0, 400.0, 1000.0);
        CHECK((sol.case_label == "3" || sol.case_label == "2"));
        CHECK(sol.placement.d_w == Approx(400.0).epsilon(1e-8));
        CHECK(sol.power == Approx(radio.p_max).epsilon(1e-8));
    }
    // fixed-point height above the ceiling: neighbours are cases 3 and 5
    {
        RadioParams radio{1e-12, 1e-9, 200, 9e-5, 0.0};
        const double cap = kl_divergence(
            radio, willie_received_power(kEnv, {3000.0, kPi / 2.0}, radio.p_max));
        radio.epsilon = std::sqrt(0.5 * cap);
        REQUIRE(optimal_height_unconstrained(kEnv, 10000.0) > 3000.0);
        const PlanSolution sol = solve_vertical(kEnv, radio, 1000.0, 3000.0, 10000.0);
        CHECK((sol.case_label == "3" || sol.case_label == "5"));
        CHECK(sol.placement.d_w == Approx(3000.0).epsilon(1e-8));
        CHECK(sol.power == Approx(radio.p_max).epsilon(1e-8));
    }
    // budget cap at the fixed-point height: neighbours are cases 2 and 4
    {
        RadioParams radio{1e-12, 1e-9, 200, 9e-5, 0.0};
        const double h_dag = optimal_height_unconstrained(kEnv, 10000.0);
        const double cap = kl_divergence(
            radio, willie_received_power(kEnv, {h_dag, kPi / 2.0}, radio.p_max));
        radio.epsilon = std::sqrt(0.5 * cap);
        const PlanSolution sol = solve_vertical(kEnv, radio, 1000.0, 5000.0, 10000.0);
        CHECK((sol.case_label == "2" || sol.case_label == "4"));
        CHECK(sol.placement.d_w == Approx(h_dag).epsilon(1e-8));
        CHECK(sol.power == Approx(radio.p_max).epsilon(1e-8));
    }
}

TEST_CASE("planar solve at a vertical-only angle floor equals solve_vertical",
          "[planner]") {
    const RadioParams radio{1e-12, 1e-9, 200, 0.01, 0.1};
    const GeometryConstraints geom{10000.0, 1000.0, 3000.0, kPi / 2.0};
    const PlanSolution planar = solve_general(kEnv, radio, geom);
    const PlanSolution vertical = solve_vertical(kEnv, radio, 1000.0, 3000.0, 10000.0);
    CHECK(planar.snr == Approx(vertical.snr).epsilon(1e-6));
    CHECK(planar.placement.d_w == Approx(vertical.placement.d_w).epsilon(1e-6));
}

TEST_CASE("nearest heuristic hugs the outer arc in scenario 1", "[planner]") {
    const GeometryConstraints geom{10000.0, 1000.0, 3000.0, kPi / 6.0};
    const PolarPlacement p = heuristic_nearest(geom);
    CHECK(p.d_w == Approx(geom.d_max).epsilon(1e-9));
    CHECK(p.theta_w == Approx(geom.theta_min).margin(1e-9));
    // closed-form argmin: the angle floor, range clamped to the box
    const PolarPlacement closed{
        std::clamp(geom.L * std::cos(geom.theta_min), geom.d_min, geom.d_max),
        geom.theta_min};
    CHECK(bob_range(p, geom.L) <= bob_range(closed, geom.L) * (1.0 + 1e-9));
}

TEST_CASE("heuristic ranking flips with the outer range bound", "[planner]") {
    const RadioParams radio{1e-12, 1e-9, 200, 0.01, 0.1};
    const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
    const auto gamma_at = [&](const GeometryConstraints& geom,
                              const PolarPlacement& p) {
        const double power =
            std::min(radio.p_max, max_covert_power(kEnv, radio, p, budget));
        return effective_snr(kEnv, radio, p, geom.L, power);
    };
    // wide ring: closest point wins
    {
        const GeometryConstraints geom{10000.0, 1000.0, 3500.0, kPi / 8.0};
        const double g_near = gamma_at(geom, heuristic_nearest(geom));
        const double g_high = gamma_at(geom, heuristic_max_angle(kEnv, geom));
        CHECK(g_near > g_high);
    }
    // tight ring: highest angle wins
    {
        const GeometryConstraints geom{10000.0, 1000.0, 2500.0, kPi / 8.0};
        const double g_near = gamma_at(geom, heuristic_nearest(geom));
        const double g_high = gamma_at(geom, heuristic_max_angle(kEnv, geom));
        CHECK(g_high > g_near);
    }
}

TEST_CASE("planner dominates both heuristics", "[planner]") {
    std::mt19937 rng(331);
    for (int i = 0; i < 8; ++i) {
        const auto target = static_cast<Scenario>(i % 6);
        const GeometryConstraints geom = random_geometry_for(target, rng);
        const RadioParams radio = random_radio(rng);
        const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
        const PlanSolution sol = solve_general(kEnv, radio, geom);
        for (const PolarPlacement& p :
             {heuristic_nearest(geom), heuristic_max_angle(kEnv, geom)}) {
            const double power =
                std::min(radio.p_max, max_covert_power(kEnv, radio, p, budget));
            const double g = effective_snr(kEnv, radio, p, geom.L, power);
            CHECK(sol.snr >= g * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("oracle refinement never loses value and handles flat boxes",
          "[planner]") {
    const GeometryConstraints geom{4000.0, 800.0, 2600.0, 0.4};
    const RadioParams radio{1e-12, 1e-9, 200, 0.005, 0.08};
    double prev = 0.0;
    for (int n = 32; n <= 256; n *= 2) {
        const PlanSolution sol = brute_force_oracle(kEnv, radio, geom, {n, n});
        CHECK(sol.snr >= prev * (1.0 - 1e-12));
        prev = sol.snr;
    }
    // zero-width range box degenerates to a 1-D scan
    const GeometryConstraints flat{4000.0, 1500.0, 1500.0, 0.4};
    const PlanSolution sol = brute_force_oracle(kEnv, radio, flat, {64, 512});
    CHECK(sol.placement.d_w == 1500.0);
    check_solution_feasible(sol, radio, flat);
}

TEST_CASE("capped power is optimal for a fixed placement", "[planner]") {
    std::mt19937 rng(337);
    for (int i = 0; i < 200; ++i) {
        const RadioParams radio = random_radio(rng);
        const CovertBudget budget = CovertBudget::from_epsilon(radio.epsilon);
        const PolarPlacement p{testutil::uniform(rng, 100.0, 8000.0),
                               testutil::uniform(rng, 0.0, kPi / 2.0)};
        const double p_star =
            std::min(radio.p_max, max_covert_power(kEnv, radio, p, budget));
        const double g_star = effective_snr(kEnv, radio, p, 10000.0, p_star);
        const double P = testutil::uniform(rng, 0.0, 1.0) * p_star;
        CHECK(effective_snr(kEnv, radio, p, 10000.0, P) <= g_star);
        CHECK(kl_divergence(radio, willie_received_power(kEnv, p, P)) <=
              budget.d01_cap * (1.0 + 1e-9));
    }
}
