#pragma once

#include <cmath>
#include <limits>

#include "lexproj/errors.hpp"
#include "lexproj/rng.hpp"

namespace lexproj::truncnorm {

inline double normalCdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

inline double normalLogPdf(double z) {
    return -0.5 * z * z - 0.91893853320467274178;  // -log(sqrt(2*pi))
}

// Mass of N(mean, sd^2) on [lo, hi], computed from the smaller tail for
// accuracy when both bounds sit far out on the same side.
inline double intervalMass(double mean, double sd, double lo, double hi) {
    double a = (lo - mean) / sd;
    double b = (hi - mean) / sd;
    if (a > 0.0) return 0.5 * (std::erfc(a * 0.7071067811865475244) - std::erfc(b * 0.7071067811865475244));
    if (b < 0.0) return 0.5 * (std::erfc(-b * 0.7071067811865475244) - std::erfc(-a * 0.7071067811865475244));
    return normalCdf(b) - normalCdf(a);
}

// Log density at x of N(mean, sd^2) truncated to [lo, hi]; -inf outside.
inline double logPdf(double x, double mean, double sd, double lo, double hi) {
    if (x < lo || x > hi) return -std::numeric_limits<double>::infinity();
    double z = (x - mean) / sd;
    double mass = intervalMass(mean, sd, lo, hi);
    if (mass <= 0.0) return -std::numeric_limits<double>::infinity();
    return normalLogPdf(z) - std::log(sd) - std::log(mass);
}

namespace detail {

// One-sided tail sampler for standard normal on [a, b] with a >= 0
// (exponential-tilted rejection, Robert 1995).
template <class R>
double tailSample(R& rng, double a, double b) {
    double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double x = a - std::log(1.0 - rng.uniform()) / alpha;
        if (x > b) continue;
        double logAccept = -0.5 * (x - alpha) * (x - alpha);
        if (std::log(1.0 - rng.uniform()) < logAccept) return x;
    }
    throw NumericalError("truncated normal tail sampler failed to accept");
}

}  // namespace detail

// Draws from N(mean, sd^2) truncated to [lo, hi].
template <class R>
double sample(R& rng, double mean, double sd, double lo, double hi) {
    double a = (lo - mean) / sd;
    double b = (hi - mean) / sd;
    double z;
    if (a > 0.5) {
        z = detail::tailSample(rng, a, b);
    } else if (b < -0.5) {
        z = -detail::tailSample(rng, -b, -a);
    } else if (b - a < 0.2) {
        // Narrow central interval: uniform proposal with density rejection.
        double zMax = (a > 0.0) ? a : (b < 0.0 ? b : 0.0);
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100000)
                throw NumericalError("truncated normal narrow-interval sampler failed to accept");
            double x = rng.uniform(a, b);
            if (std::log(rng.uniform()) < 0.5 * (zMax * zMax - x * x)) {
                z = x;
                break;
            }
        }
    } else {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100000)
                throw NumericalError("truncated normal rejection sampler failed to accept");
            double x = rng.normal();
            if (x >= a && x <= b) {
                z = x;
                break;
            }
        }
    }
    return mean + sd * z;
}

}  // namespace lexproj::truncnorm
