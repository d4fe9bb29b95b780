#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexproj/errors.hpp"
#include "lexproj/rng.hpp"

namespace lexproj {

struct SliceResult {
    double x;
    double logDensity;
    bool stalled = false;  // shrinkage exhausted; x is the unchanged input
};

// Univariate slice sampler (step-out then shrinkage) on a bounded support
// [lo, hi]. logDensity may return -inf inside the bounds; NaN aborts.
//
// initialLogDensity, when finite, must equal logDensity(x0) and skips one
// evaluation per call.
template <class LogDensity>
SliceResult sliceSample(double x0, double lo, double hi, double width, LogDensity&& logDensity,
                        Rng& rng, int maxShrink = 100,
                        double initialLogDensity = std::numeric_limits<double>::quiet_NaN()) {
    auto eval = [&](double x) {
        double v = logDensity(x);
        if (std::isnan(v)) throw NumericalError("slice sampler: log density is NaN");
        return v;
    };

    double logp0 = std::isnan(initialLogDensity) ? eval(x0) : initialLogDensity;
    if (!std::isfinite(logp0))
        throw NumericalError("slice sampler: log density not finite at the current point");

    double logy = logp0 - rng.exponential();

    // Initial interval around x0, clamped to the support.
    double u = rng.uniform() * width;
    double left = std::max(lo, x0 - u);
    double right = std::min(hi, left + width);

    // Step out until both ends are off the slice or hit the bounds. The
    // support is bounded so this always terminates.
    while (left > lo && eval(left) > logy) left = std::max(lo, left - width);
    while (right < hi && eval(right) > logy) right = std::min(hi, right + width);

    // Sample from the interval, shrinking toward x0 on rejection.
    for (int step = 0; step < maxShrink; ++step) {
        double x1 = rng.uniform(left, right);
        double logp1 = eval(x1);
        if (logp1 >= logy) return {x1, logp1, false};
        if (x1 > x0)
            right = x1;
        else
            left = x1;
    }
    return {x0, logp0, true};
}

}  // namespace lexproj
