#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cuav/covertness.hpp"
#include "cuav/detection.hpp"
#include "cuav/gammainc.hpp"
#include "test_helpers.hpp"

using namespace cuav;
using Catch::Approx;

TEST_CASE("regularized incomplete gamma reference values", "[detection]") {
    // frozen from 50-digit evaluations
    CHECK(std::abs(gammainc_lower(0.5, 0.25) - 0.52049987781304654) < 1e-12);
    CHECK(std::abs(gammainc_lower(5.0, 3.0) - 0.18473675547622793) < 1e-12);
    CHECK(std::abs(gammainc_lower(100.0, 100.0) - 0.51329879827914866) < 1e-12);
    CHECK(std::abs(gammainc_lower(500.0, 480.0) - 0.18628197319032460) < 1e-12);
    CHECK(std::abs(gammainc_lower(250.0, 300.0) - 0.99862252812247180) < 1e-12);
    CHECK(gammainc_lower(3.0, 0.0) == 0.0);
    CHECK(gammainc_upper(3.0, 0.0) == 1.0);
    // complementarity
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        const double a = testutil::uniform(rng, 0.5, 600.0);
        const double x = testutil::uniform(rng, 0.0, 2.0 * a);
        CHECK(gammainc_lower(a, x) + gammainc_upper(a, x) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact_min_error_rate reference values", "[detection]") {
    // zero received power: hypotheses coincide
    CHECK(exact_min_error_rate({1, 1, 200, 1, 0.1}, 0.0).xi_star == 1.0);
    // frozen from 50-digit chi-square tail evaluations
    {
        const auto r = exact_min_error_rate({1, 1, 2, 1, 0.1}, 1.0);
        CHECK(r.alpha == Approx(0.25).epsilon(1e-12));
        CHECK(r.beta == Approx(0.5).epsilon(1e-12));
        CHECK(r.xi_star == Approx(0.75).epsilon(1e-12));
    }
    {
        const auto r = exact_min_error_rate({1, 1, 200, 1, 0.1}, 0.002);
        CHECK(r.alpha == Approx(0.48271981207505160).epsilon(1e-11));
        CHECK(r.beta == Approx(0.50931608261912058).epsilon(1e-11));
        CHECK(r.xi_star == Approx(0.99203589469417218).epsilon(1e-11));
    }
    CHECK(exact_min_error_rate({1, 1, 10, 1, 0.1}, 0.5).xi_star ==
          Approx(0.65607235885686678).epsilon(1e-11));
    CHECK(exact_min_error_rate({1, 1, 100, 1, 0.1}, 0.05).xi_star ==
          Approx(0.86327307935646423).epsilon(1e-11));
}

TEST_CASE("exact error rate dominates the KL bound", "[detection]") {
    std::mt19937 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const long n = 1 + static_cast<long>(testutil::uniform(rng, 0.0, 1000.0));
        const double x = std::pow(10.0, testutil::uniform(rng, -4.0, 1.0));
        const RadioParams radio{1.0, 1.0, n, 1.0, 0.1};
        const auto r = exact_min_error_rate(radio, x);
        const double bound = error_rate_lower_bound(kl_divergence(radio, x));
        CHECK(r.xi_star >= bound - 1e-9);
        CHECK(r.xi_star <= 1.0 + 1e-12);
    }
}

TEST_CASE("exact error rate is monotone in energy and blocklength", "[detection]") {
    double prev = 1.0 + 1e-12;
    for (int i = 0; i <= 60; ++i) {
        const double x = 1e-3 * std::pow(10.0, 4.0 * i / 60.0);
        const double xi = exact_min_error_rate({1, 1, 50, 1, 0.1}, x).xi_star;
        CHECK(xi <= prev + 1e-12);
        prev = xi;
    }
    CHECK(prev < 1e-6);  // large energy drives the error rate to zero
    prev = 1.0 + 1e-12;
    for (long n = 10; n <= 1000; n += 30) {
        const double xi = exact_min_error_rate({1, 1, n, 1, 0.1}, 0.3).xi_star;
        CHECK(xi <= prev + 1e-12);
        prev = xi;
    }
}

TEST_CASE("monte-carlo detector is seed-deterministic", "[detection]") {
    const RadioParams radio{1.0, 1.0, 64, 1.0, 0.1};
    const auto a = simulate_detection(radio, 0.2, 20000, 987654321);
    const auto b = simulate_detection(radio, 0.2, 20000, 987654321);
    CHECK(a.alpha == b.alpha);
    CHECK(a.beta == b.beta);
    CHECK(a.xi_star == b.xi_star);
    const auto c = simulate_detection(radio, 0.2, 20000, 123);
    CHECK(a.xi_star != c.xi_star);  // different stream
}

TEST_CASE("monte-carlo detector matches the closed form", "[detection]") {
    std::mt19937 rng(29);
    const std::uint64_t trials = 100000;
    for (int i = 0; i < 20; ++i) {
        const long n = 5 + static_cast<long>(testutil::uniform(rng, 0.0, 200.0));
        const double x = std::pow(10.0, testutil::uniform(rng, -1.5, 0.7));
        const RadioParams radio{1.0, 1.0, n, 1.0, 0.1};
        const auto exact = exact_min_error_rate(radio, x);
        const auto mc = simulate_detection(radio, x, trials, 1000 + i);
        const double tol =
            4.0 * std::sqrt(exact.xi_star * (2.0 - exact.xi_star) / double(trials));
        CHECK(std::abs(mc.xi_star - exact.xi_star) <= tol);
    }
    // silent transmitter: estimate within confidence of 1
    const RadioParams radio{1.0, 1.0, 32, 1.0, 0.1};
    const auto mc = simulate_detection(radio, 0.0, trials, 4242);
    CHECK(std::abs(mc.xi_star - 1.0) <= 4.0 / std::sqrt(double(trials)));
}
