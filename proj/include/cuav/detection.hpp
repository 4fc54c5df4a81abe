#pragma once

#include <cmath>
#include <cstdint>

#include "cuav/gammainc.hpp"
#include "cuav/rng.hpp"
#include "cuav/types.hpp"

namespace cuav {

/// Outcome of the warden's optimal energy detector.
struct DetectionResult {
    double alpha;      ///< false-positive rate
    double beta;       ///< miss rate
    double xi_star;    ///< total error rate alpha + beta
    double threshold;  ///< decision threshold on sum of squared samples (W*symbols)
};

/// Exact minimum total error rate of the warden's likelihood-ratio test.
///
/// With Gaussian samples the test reduces to thresholding the received
/// energy T = sum y^2: T / sigma2_w is chi-square(n) when silent and
/// T / (sigma2_w (1+x)) chi-square(n) when transmitting, x = p_bar /
/// sigma2_w. The ratio-1 threshold is tau = n sigma2_w (1+x) ln(1+x) / x.
inline DetectionResult exact_min_error_rate(const RadioParams& radio, double p_bar) {
    const double n = static_cast<double>(radio.n);
    if (p_bar == 0.0) {
        // hypotheses identical; any test has alpha + beta = 1
        return DetectionResult{0.5, 0.5, 1.0, n * radio.sigma2_w};
    }
    const double x = p_bar / radio.sigma2_w;
    const double log1px = std::log1p(x);
    const double tau = n * radio.sigma2_w * (1.0 + x) * log1px / x;
    const double alpha = chi_square_sf(n, n * (1.0 + x) * log1px / x);
    const double beta = chi_square_cdf(n, n * log1px / x);
    return DetectionResult{alpha, beta, alpha + beta, tau};
}

/// Seeded Monte-Carlo estimate of the same detector: `trials` independent
/// length-n observation vectors per hypothesis, thresholded at tau. The
/// per-trial substream derivation makes the result independent of
/// evaluation order.
inline DetectionResult simulate_detection(const RadioParams& radio, double p_bar,
                                          std::uint64_t trials, std::uint64_t seed) {
    const double n = static_cast<double>(radio.n);
    const double x = p_bar / radio.sigma2_w;
    const double tau = p_bar == 0.0
                           ? n * radio.sigma2_w
                           : n * radio.sigma2_w * (1.0 + x) * std::log1p(x) / x;
    const double sd0 = std::sqrt(radio.sigma2_w);
    const double sd1 = std::sqrt(radio.sigma2_w + p_bar);
    std::uint64_t false_alarms = 0;
    std::uint64_t misses = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        GaussianStream gs(substream(seed, t));
        double t0 = 0.0, t1 = 0.0;
        for (long i = 0; i < radio.n; ++i) {
            const double z = sd0 * gs.next();
            t0 += z * z;
        }
        for (long i = 0; i < radio.n; ++i) {
            const double z = sd1 * gs.next();
            t1 += z * z;
        }
        if (t0 >= tau) ++false_alarms;
        if (t1 < tau) ++misses;
    }
    const double alpha = static_cast<double>(false_alarms) / static_cast<double>(trials);
    const double beta = static_cast<double>(misses) / static_cast<double>(trials);
    return DetectionResult{alpha, beta, alpha + beta, tau};
}

} // namespace cuav
