#pragma once

#include <cmath>
#include <random>

#include "cuav/types.hpp"

namespace testutil {

/// Richardson-extrapolated central difference, truncation O(h^4).
template <class F>
double derivative(F&& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Environment draw spanning published S-curve fits from suburban to
/// high-rise.
inline cuav::EnvModel random_env(std::mt19937& rng) {
    cuav::EnvModel env;
    env.a = uniform(rng, 4.0, 28.0);
    env.b = uniform(rng, 0.08, 0.5);
    env.xi_los = uniform(rng, -3.0, -1.2);
    env.xi_nlos = env.xi_los - uniform(rng, 0.5, 1.5);
    return env;
}

} // namespace testutil
